#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lambek/formula.hpp"

namespace lambek {

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite commutative residuated lattice given by tables. Elements are
/// indices into `carrier`; all tables are carrier x carrier, row-major.
/// `limp` is the single residual (x -o z), lawful iff
/// prod(x,y) <= z  <=>  y <= limp(x,z).
struct FiniteResiduatedLattice {
  std::vector<std::string> carrier;
  std::vector<bool> leq;    // leq[x*n+y] : x <= y
  std::vector<int> meet;
  std::vector<int> join;
  std::vector<int> prod;
  std::vector<int> limp;
  std::optional<int> unit;

  int size() const { return static_cast<int>(carrier.size()); }
  bool le(int x, int y) const { return leq[static_cast<size_t>(x) * carrier.size() + y]; }
  int mt(int x, int y) const { return meet[static_cast<size_t>(x) * carrier.size() + y]; }
  int jn(int x, int y) const { return join[static_cast<size_t>(x) * carrier.size() + y]; }
  int pr(int x, int y) const { return prod[static_cast<size_t>(x) * carrier.size() + y]; }
  int im(int x, int y) const { return limp[static_cast<size_t>(x) * carrier.size() + y]; }
  int element(const std::string& name) const;  // -1 if absent
};

struct LatticeViolation {
  std::string law;       // e.g. "residuation", "associativity"
  std::string witness;   // offending elements, rendered
};

struct LatticeReport {
  bool valid = true;
  std::vector<LatticeViolation> violations;
};

/// Exhaustively checks partial order, glb/lub, associativity, commutativity,
/// residuation and (if present) the unit laws.
LatticeReport validate_lattice(const FiniteResiduatedLattice& lat);

/// The 5-element counter-model: carrier {0,a,b,c,1}, order 0 < a,b,c < 1
/// with a,b,c pairwise incomparable, product and residual by table. No
/// designated unit.
FiniteResiduatedLattice lattice_r5();

using LatticeAssignment = std::map<std::string, int>;

/// Meet/join/prod as tabled; divisions (either direction) through the one
/// commutative residual; the unit constant requires a designated unit.
int lattice_eval(const FiniteResiduatedLattice& lat, const LatticeAssignment& assignment, Formula f);

/// Product of the antecedent values lies below the succedent value; an empty
/// antecedent compares the unit.
bool lattice_sequent_true(const FiniteResiduatedLattice& lat, const LatticeAssignment& assignment,
                          const Sequent& s);

/// Exhaustive search over carrier^|vars(s)|, variables in name order;
/// returns the lexicographically first falsifying assignment.
std::optional<LatticeAssignment> find_falsifier(const FiniteResiduatedLattice& lat, const Sequent& s);

/// Lattice file schema: {"carrier": [...], "leq": [[..]], "meet": [[..]],
/// "join": [[..]], "prod": [[..]], "limp": [[..]], "unit": optional}
FiniteResiduatedLattice lattice_from_json(const std::string& text);
std::string lattice_to_json(const FiniteResiduatedLattice& lat);

}  // namespace lambek
