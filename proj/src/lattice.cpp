#include "lambek/lattice.hpp"

#include <algorithm>

#include <json.hpp>

namespace lambek {

int FiniteResiduatedLattice::element(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (carrier[i] == name) return i;
  return -1;
}

namespace {

std::string wit(const FiniteResiduatedLattice& lat, std::initializer_list<int> xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += ", ";
    out += lat.carrier[x];
  }
  return out;
}

}  // namespace

LatticeReport validate_lattice(const FiniteResiduatedLattice& lat) {
  LatticeReport report;
  auto flag = [&](std::string law, std::string witness) {
    report.valid = false;
    report.violations.push_back({std::move(law), std::move(witness)});
  };
  const int n = lat.size();
  const size_t n2 = static_cast<size_t>(n) * n;
  if (lat.leq.size() != n2 || lat.meet.size() != n2 || lat.join.size() != n2 || lat.prod.size() != n2 ||
      lat.limp.size() != n2)
    throw LatticeError("tables must be carrier x carrier");
  for (size_t i = 0; i < n2; ++i)
    if (lat.meet[i] < 0 || lat.meet[i] >= n || lat.join[i] < 0 || lat.join[i] >= n || lat.prod[i] < 0 ||
        lat.prod[i] >= n || lat.limp[i] < 0 || lat.limp[i] >= n)
      throw LatticeError("table entry outside the carrier");
  if (lat.unit && (*lat.unit < 0 || *lat.unit >= n)) throw LatticeError("unit outside the carrier");

  for (int x = 0; x < n; ++x)
    if (!lat.le(x, x)) flag("reflexivity", wit(lat, {x}));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && lat.le(x, y) && lat.le(y, x)) flag("antisymmetry", wit(lat, {x, y}));
      for (int z = 0; z < n; ++z)
        if (lat.le(x, y) && lat.le(y, z) && !lat.le(x, z)) flag("transitivity", wit(lat, {x, y, z}));
    }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int m = lat.mt(x, y);
      if (!lat.le(m, x) || !lat.le(m, y)) flag("meet is a lower bound", wit(lat, {x, y}));
      for (int z = 0; z < n; ++z)
        if (lat.le(z, x) && lat.le(z, y) && !lat.le(z, m)) flag("meet is the greatest lower bound", wit(lat, {x, y, z}));
      int j = lat.jn(x, y);
      if (!lat.le(x, j) || !lat.le(y, j)) flag("join is an upper bound", wit(lat, {x, y}));
      for (int z = 0; z < n; ++z)
        if (lat.le(x, z) && lat.le(y, z) && !lat.le(j, z)) flag("join is the least upper bound", wit(lat, {x, y, z}));
    }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (lat.pr(x, y) != lat.pr(y, x)) flag("commutativity", wit(lat, {x, y}));
      for (int z = 0; z < n; ++z) {
        if (lat.pr(lat.pr(x, y), z) != lat.pr(x, lat.pr(y, z))) flag("associativity", wit(lat, {x, y, z}));
        bool lhs = lat.le(lat.pr(x, y), z);
        bool rhs = lat.le(y, lat.im(x, z));
        if (lhs != rhs) flag("residuation", wit(lat, {x, y, z}));
      }
    }

  if (lat.unit) {
    for (int x = 0; x < n; ++x)
      if (lat.pr(*lat.unit, x) != x || lat.pr(x, *lat.unit) != x) flag("unit law", wit(lat, {x}));
  }
  return report;
}

FiniteResiduatedLattice lattice_r5() {
  FiniteResiduatedLattice lat;
  lat.carrier = {"0", "a", "b", "c", "1"};
  const int n = 5;
  lat.leq.assign(n * n, false);
  auto le = [&](int x, int y) { lat.leq[static_cast<size_t>(x) * n + y] = true; };
  for (int x = 0; x < n; ++x) le(x, x);
  for (int x : {1, 2, 3}) {
    le(0, x);
    le(x, 4);
  }
  le(0, 4);

  lat.meet.assign(n * n, 0);
  lat.join.assign(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      // glb/lub of the diamond 0 < a,b,c < 1
      int m, j;
      if (lat.le(x, y)) {
        m = x;
        j = y;
      } else if (lat.le(y, x)) {
        m = y;
        j = x;
      } else {
        m = 0;
        j = 4;
      }
      lat.meet[static_cast<size_t>(x) * n + y] = m;
      lat.join[static_cast<size_t>(x) * n + y] = j;
    }

  // rows/columns ordered 0, a, b, c, 1
  lat.prod = {
      0, 0, 0, 0, 0,
      0, 1, 2, 3, 4,
      0, 2, 1, 3, 4,
      0, 3, 3, 0, 3,
      0, 4, 4, 3, 4,
  };
  lat.limp = {
      4, 4, 4, 4, 4,
      0, 1, 2, 3, 4,
      0, 2, 1, 3, 4,
      3, 3, 3, 4, 4,
      0, 0, 0, 3, 4,
  };
  lat.unit = std::nullopt;  // the tables happen to have one, but none is designated
  return lat;
}

int lattice_eval(const FiniteResiduatedLattice& lat, const LatticeAssignment& assignment, Formula f0) {
  Formula f = normalize_commutative(f0);
  switch (f.tag()) {
    case Conn::Var: {
      auto it = assignment.find(f.var_name());
      if (it == assignment.end())
        throw LatticeError("variable '" + f.var_name() + "' has no value in the assignment");
      return it->second;
    }
    case Conn::Unit:
      if (!lat.unit) throw LatticeError("this lattice designates no unit element");
      return *lat.unit;
    case Conn::Prod:
      return lat.pr(lattice_eval(lat, assignment, f.left()), lattice_eval(lat, assignment, f.right()));
    case Conn::LDiv:
      return lat.im(lattice_eval(lat, assignment, f.left()), lattice_eval(lat, assignment, f.right()));
    case Conn::Meet:
      return lat.mt(lattice_eval(lat, assignment, f.left()), lattice_eval(lat, assignment, f.right()));
    case Conn::Join:
      return lat.jn(lattice_eval(lat, assignment, f.left()), lattice_eval(lat, assignment, f.right()));
    default:
      throw LatticeError("unreachable connective");
  }
}

bool lattice_sequent_true(const FiniteResiduatedLattice& lat, const LatticeAssignment& assignment,
                          const Sequent& s) {
  int suc = lattice_eval(lat, assignment, s.succedent);
  if (s.antecedent.empty()) {
    if (!lat.unit) throw LatticeError("empty antecedent needs a designated unit");
    return lat.le(*lat.unit, suc);
  }
  int acc = lattice_eval(lat, assignment, s.antecedent[0]);
  for (size_t i = 1; i < s.antecedent.size(); ++i)
    acc = lat.pr(acc, lattice_eval(lat, assignment, s.antecedent[i]));
  return lat.le(acc, suc);
}

std::optional<LatticeAssignment> find_falsifier(const FiniteResiduatedLattice& lat, const Sequent& s) {
  std::vector<std::string> vars = sequent_variables(s);
  std::sort(vars.begin(), vars.end());
  const int n = lat.size();
  std::vector<int> values(vars.size(), 0);
  for (;;) {
    LatticeAssignment assignment;
    for (size_t i = 0; i < vars.size(); ++i) assignment[vars[i]] = values[i];
    if (!lattice_sequent_true(lat, assignment, s)) return assignment;
    // next tuple, lexicographic
    size_t i = values.size();
    while (i > 0 && values[i - 1] == n - 1) values[--i] = 0;
    if (i == 0) return std::nullopt;
    ++values[i - 1];
  }
}

FiniteResiduatedLattice lattice_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FiniteResiduatedLattice lat;
  for (const auto& e : j.at("carrier")) lat.carrier.push_back(e.get<std::string>());
  const int n = lat.size();
  auto read_table = [&](const char* key, auto& out, auto convert) {
    const auto& rows = j.at(key);
    if (static_cast<int>(rows.size()) != n) throw LatticeError(std::string(key) + " must have one row per element");
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n)
        throw LatticeError(std::string(key) + " rows must have one entry per element");
      for (const auto& cell : row) out.push_back(convert(cell));
    }
  };
  auto as_elem = [&](const nlohmann::json& cell) {
    if (cell.is_number_integer()) {
      int v = cell.get<int>();
      if (v < 0 || v >= n) throw LatticeError("element index out of range");
      return v;
    }
    int v = lat.element(cell.get<std::string>());
    if (v < 0) throw LatticeError("unknown element '" + cell.get<std::string>() + "'");
    return v;
  };
  read_table("leq", lat.leq, [](const nlohmann::json& c) { return c.get<bool>(); });
  read_table("meet", lat.meet, as_elem);
  read_table("join", lat.join, as_elem);
  read_table("prod", lat.prod, as_elem);
  read_table("limp", lat.limp, as_elem);
  if (j.contains("unit") && !j["unit"].is_null()) lat.unit = as_elem(j["unit"]);
  return lat;
}

std::string lattice_to_json(const FiniteResiduatedLattice& lat) {
  nlohmann::json j;
  j["carrier"] = lat.carrier;
  const int n = lat.size();
  auto table = [&](const auto& flat, auto convert) {
    nlohmann::json rows = nlohmann::json::array();
    for (int x = 0; x < n; ++x) {
      nlohmann::json row = nlohmann::json::array();
      for (int y = 0; y < n; ++y) row.push_back(convert(flat[static_cast<size_t>(x) * n + y]));
      rows.push_back(row);
    }
    return rows;
  };
  j["leq"] = table(lat.leq, [](bool b) { return b; });
  auto name = [&](int e) { return lat.carrier[e]; };
  j["meet"] = table(lat.meet, name);
  j["join"] = table(lat.join, name);
  j["prod"] = table(lat.prod, name);
  j["limp"] = table(lat.limp, name);
  if (lat.unit) j["unit"] = lat.carrier[*lat.unit];
  return j.dump(2);
}

}  // namespace lambek
