// Command-line front end for the Lambek calculus workbench.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lambek/calculi.hpp"
#include "lambek/langmodel.hpp"
#include "lambek/lattice.hpp"
#include "lambek/minsky.hpp"
#include "lambek/prover.hpp"
#include "lambek/repro.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
}

lambek::CalculusId parse_calculus(const std::string& name) {
  auto id = lambek::calculus_from_string(name);
  if (!id) throw DataError("unknown calculus '" + name + "'");
  return *id;
}

lambek::Configuration parse_config(const std::string& text) {
  lambek::Configuration c;
  char comma1 = 0, comma2 = 0;
  std::istringstream in(text);
  if (!(in >> c.state >> comma1 >> c.k1 >> comma2 >> c.k2) || comma1 != ',' || comma2 != ',' ||
      c.k1 < 0 || c.k2 < 0)
    throw DataError("expected a configuration \"state,k1,k2\", got '" + text + "'");
  return c;
}

lambek::ModelAssignment load_model(const std::string& path) {
  return lambek::model_from_json(read_file(path));
}

lambek::FiniteResiduatedLattice load_lattice(const std::string& spec) {
  if (spec == "r5") return lambek::lattice_r5();
  return lambek::lattice_from_json(read_file(spec));
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

lambek::LatticeAssignment parse_assignment(const lambek::FiniteResiduatedLattice& lat,
                                           const std::string& text) {
  lambek::LatticeAssignment out;
  for (const std::string& pair : split_commas(text)) {
    auto eq = pair.find('=');
    if (eq == std::string::npos) throw DataError("expected var=element in '" + pair + "'");
    std::string var = pair.substr(0, eq), elem = pair.substr(eq + 1);
    int e = lat.element(elem);
    if (e < 0) throw DataError("unknown lattice element '" + elem + "'");
    out[var] = e;
  }
  return out;
}

void emit(bool json, const nlohmann::json& j, const std::string& text) {
  if (json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambek - a workbench for substructural sequent calculi"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--format-json,--json", json, "machine-readable output");
  app.set_help_all_flag("--help-all");

  // prove
  auto* prove = app.add_subcommand("prove", "decide a sequent by backward proof search");
  std::string calculus_name, sequent_text, emit_derivation;
  lambek::SearchBudget budget;
  prove->add_option("--calculus", calculus_name, "l, lstar, malc, malcstar, amalcstar, ill, ial, l1, lpluseps")
      ->required();
  prove->add_option("--sequent", sequent_text, "for example \"p, p\\\\q |- q\"")->required();
  prove->add_option("--budget-nodes", budget.max_nodes, "search node budget");
  prove->add_option("--budget-depth", budget.max_depth, "depth cap (lpluseps)");
  prove->add_option("--budget-deps", budget.max_deps, "De applications per branch (lpluseps)");
  prove->add_option("--emit-derivation", emit_derivation, "write the derivation as JSON to this path");

  // model
  auto* model = app.add_subcommand("model", "regular-language models");
  auto* model_eval = model->add_subcommand("eval", "evaluate sequent truth in a model");
  std::string model_path, model_class_name;
  model_eval->add_option("--model", model_path, "model JSON file")->required();
  model_eval->add_option("--sequent", sequent_text, "sequent text")->required();
  auto* model_classcheck = model->add_subcommand("classcheck", "check every valuation language");
  model_classcheck->add_option("--model", model_path)->required();
  model_classcheck->add_option("--class", model_class_name, "monotone|commutative")->required();
  auto* model_random = model->add_subcommand("random", "generate a seeded random model");
  uint64_t seed = 0;
  std::string vars_text = "p,q", alphabet_text = "a,b", random_class = "plain";
  model_random->add_option("--seed", seed)->required();
  model_random->add_option("--class", random_class, "plain|monotone|commutative|monotonecommutative");
  model_random->add_option("--vars", vars_text, "comma-separated variable names");
  model_random->add_option("--alphabet", alphabet_text, "comma-separated letters");
  bool noeps = false;
  model_random->add_flag("--noeps", noeps, "epsilon-free model");

  // lattice
  auto* lattice = app.add_subcommand("lattice", "finite residuated lattices");
  std::string lattice_spec, assign_text;
  auto* lattice_validate = lattice->add_subcommand("validate", "check every lattice law");
  lattice_validate->add_option("--lattice", lattice_spec, "JSON file or the builtin name r5")->required();
  auto* lattice_eval_cmd = lattice->add_subcommand("eval", "sequent truth under an assignment");
  lattice_eval_cmd->add_option("--lattice", lattice_spec)->required();
  lattice_eval_cmd->add_option("--assign", assign_text, "x=a,y=b,...")->required();
  lattice_eval_cmd->add_option("--sequent", sequent_text)->required();
  auto* lattice_falsify = lattice->add_subcommand("falsify", "search for a falsifying assignment");
  lattice_falsify->add_option("--lattice", lattice_spec)->required();
  lattice_falsify->add_option("--sequent", sequent_text)->required();
  auto* lattice_builtin = lattice->add_subcommand("builtin", "print a builtin lattice as JSON");
  std::string builtin_name;
  lattice_builtin->add_option("name", builtin_name, "r5")->required();

  // minsky
  auto* minsky = app.add_subcommand("minsky", "two-counter machines and their encodings");
  std::string machine_path, from_text;
  long long cap = 64;
  bool check_flag = false;
  auto* minsky_simulate = minsky->add_subcommand("simulate", "breadth-first reachability of (L0,0,0)");
  minsky_simulate->add_option("--machine", machine_path)->required();
  minsky_simulate->add_option("--from", from_text, "start configuration \"i,k1,k2\"")->required();
  minsky_simulate->add_option("--cap", cap, "counter cap during the search");
  auto* minsky_encode = minsky->add_subcommand("encode", "print the encoded target sequent");
  minsky_encode->add_option("--machine", machine_path)->required();
  minsky_encode->add_option("--from", from_text)->required();
  auto* minsky_derive = minsky->add_subcommand("derive", "synthesize the forward-encoding derivation");
  minsky_derive->add_option("--machine", machine_path)->required();
  minsky_derive->add_option("--from", from_text)->required();
  minsky_derive->add_flag("--check", check_flag, "run the derivation checker on the result");
  minsky_derive->add_option("--emit-derivation", emit_derivation, "write the derivation as JSON");
  minsky_derive->add_option("--cap", cap, "counter cap during the search");

  // repro
  auto* repro = app.add_subcommand("repro", "run the acceptance suite");
  std::vector<std::string> only;
  repro->add_option("--only", only, "run only the named case (repeatable)");

  // let --format-json appear after a subcommand as well
  for (CLI::App* sc : {prove, model, lattice, minsky, repro}) {
    sc->fallthrough();
    for (CLI::App* nested : sc->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (prove->parsed()) {
      lambek::CalculusId id = parse_calculus(calculus_name);
      lambek::Sequent s = lambek::parse_sequent(sequent_text);
      lambek::ProofResult r = lambek::decide(s, id, budget);
      nlohmann::json j{{"sequent", lambek::render(s)},
                       {"calculus", calculus_name},
                       {"nodes", r.report().nodes_used}};
      switch (r.kind()) {
        case lambek::ProofResult::Kind::Derivable: {
          j["result"] = "derivable";
          std::string tree = lambek::render_tree(*r.derivation());
          emit(json, j, "derivable\n" + tree);
          if (!emit_derivation.empty())
            write_file(emit_derivation, lambek::derivation_to_json(*r.derivation()));
          return kExitTrue;
        }
        case lambek::ProofResult::Kind::NotDerivable:
          j["result"] = "not-derivable";
          emit(json, j, "not derivable\n");
          return kExitFalse;
        case lambek::ProofResult::Kind::Unknown:
          j["result"] = "unknown";
          j["nodes_exhausted"] = r.report().nodes_exhausted;
          j["depth_capped"] = r.report().depth_capped;
          j["deps_capped"] = r.report().deps_capped;
          emit(json, j, "unknown (budget exhausted or capped search)\n");
          return kExitUnknown;
      }
    }

    if (model_eval->parsed()) {
      lambek::ModelAssignment m = load_model(model_path);
      bool truth = lambek::sequent_truth(m, lambek::parse_sequent(sequent_text));
      emit(json, {{"result", truth}}, truth ? "true\n" : "false\n");
      return truth ? kExitTrue : kExitFalse;
    }
    if (model_classcheck->parsed()) {
      lambek::ModelAssignment m = load_model(model_path);
      lambek::LangClass which;
      if (model_class_name == "monotone")
        which = lambek::LangClass::Monotone;
      else if (model_class_name == "commutative")
        which = lambek::LangClass::Commutative;
      else
        throw DataError("class must be monotone or commutative");
      bool ok = lambek::model_class_check(m, which);
      emit(json, {{"result", ok}}, ok ? "all languages in class\n" : "class violated\n");
      return ok ? kExitTrue : kExitFalse;
    }
    if (model_random->parsed()) {
      lambek::ModelClass cls;
      if (random_class == "plain")
        cls = lambek::ModelClass::Plain;
      else if (random_class == "monotone")
        cls = lambek::ModelClass::Monotone;
      else if (random_class == "commutative")
        cls = lambek::ModelClass::Commutative;
      else if (random_class == "monotonecommutative")
        cls = lambek::ModelClass::MonotoneCommutative;
      else
        throw DataError("unknown model class '" + random_class + "'");
      std::string letters;
      for (const std::string& l : split_commas(alphabet_text)) {
        if (l.size() != 1) throw DataError("letters must be single characters");
        letters += l;
      }
      lambek::ModelAssignment m =
          lambek::random_model(lambek::Alphabet(letters), split_commas(vars_text), seed, cls,
                               noeps ? lambek::Semantics::EpsilonFree : lambek::Semantics::WithEpsilon);
      std::cout << lambek::model_to_json(m) << "\n";
      return kExitTrue;
    }

    if (lattice_validate->parsed()) {
      lambek::LatticeReport rep = lambek::validate_lattice(load_lattice(lattice_spec));
      nlohmann::json j{{"valid", rep.valid}};
      std::string text = rep.valid ? "valid\n" : "";
      for (const auto& v : rep.violations) {
        j["violations"].push_back({{"law", v.law}, {"witness", v.witness}});
        text += "violated: " + v.law + " at " + v.witness + "\n";
      }
      emit(json, j, text);
      return rep.valid ? kExitTrue : kExitFalse;
    }
    if (lattice_eval_cmd->parsed()) {
      lambek::FiniteResiduatedLattice lat = load_lattice(lattice_spec);
      bool truth =
          lambek::lattice_sequent_true(lat, parse_assignment(lat, assign_text),
                                       lambek::parse_sequent(sequent_text));
      emit(json, {{"result", truth}}, truth ? "true\n" : "false\n");
      return truth ? kExitTrue : kExitFalse;
    }
    if (lattice_falsify->parsed()) {
      lambek::FiniteResiduatedLattice lat = load_lattice(lattice_spec);
      auto falsifier = lambek::find_falsifier(lat, lambek::parse_sequent(sequent_text));
      if (!falsifier) {
        emit(json, {{"falsified", false}}, "no falsifying assignment\n");
        return kExitTrue;
      }
      nlohmann::json j{{"falsified", true}};
      std::string text = "falsified by";
      for (const auto& [var, e] : *falsifier) {
        j["assignment"][var] = lat.carrier[e];
        text += " " + var + "=" + lat.carrier[e];
      }
      emit(json, j, text + "\n");
      return kExitFalse;
    }
    if (lattice_builtin->parsed()) {
      if (builtin_name != "r5") throw DataError("unknown builtin lattice '" + builtin_name + "'");
      std::cout << lambek::lattice_to_json(lambek::lattice_r5()) << "\n";
      return kExitTrue;
    }

    if (minsky_simulate->parsed()) {
      lambek::MinskyMachine m = lambek::machine_from_json(read_file(machine_path));
      lambek::ReachResult r = lambek::reach_final(m, parse_config(from_text), cap);
      if (!r.reached) {
        emit(json, {{"reached", false}}, "final configuration not reached within caps\n");
        return kExitUnknown;
      }
      nlohmann::json j{{"reached", true}, {"trace", r.trace}};
      std::string text = "reached (L0,0,0) in " + std::to_string(r.trace.size()) + " step(s); trace:";
      for (int idx : r.trace) text += " " + std::to_string(idx);
      emit(json, j, text + "\n");
      return kExitTrue;
    }
    if (minsky_encode->parsed()) {
      lambek::MinskyMachine m = lambek::machine_from_json(read_file(machine_path));
      lambek::EncodingContext ctx;
      lambek::Sequent s = lambek::target_sequent(m, parse_config(from_text), ctx);
      emit(json, {{"sequent", lambek::render(s)}}, lambek::render(s) + "\n");
      return kExitTrue;
    }
    if (minsky_derive->parsed()) {
      lambek::MinskyMachine m = lambek::machine_from_json(read_file(machine_path));
      lambek::Configuration from = parse_config(from_text);
      lambek::EncodingContext ctx;
      lambek::ReachResult r = lambek::reach_final(m, from, cap);
      if (!r.reached) {
        emit(json, {{"reached", false}}, "final configuration not reached within caps\n");
        return kExitUnknown;
      }
      lambek::DerivationPtr d = lambek::synthesize_derivation(m, from, r.trace, ctx);
      nlohmann::json j{{"reached", true},
                       {"nodes", lambek::derivation_node_count(*d)},
                       {"conclusion", lambek::render(d->conclusion)}};
      std::string text = "derivation with " + std::to_string(lambek::derivation_node_count(*d)) +
                         " nodes for " + lambek::render(d->conclusion) + "\n";
      if (check_flag) {
        lambek::CheckReport rep = lambek::check_derivation(*d, lambek::CalculusId::LPLUSEPS);
        j["checked"] = rep.valid;
        if (!rep.valid) {
          emit(json, j, text + "checker rejected: " + rep.reason + "\n");
          return kExitFalse;
        }
        text += "checked under lpluseps\n";
      }
      emit(json, j, text);
      if (!emit_derivation.empty()) write_file(emit_derivation, lambek::derivation_to_json(*d));
      return kExitTrue;
    }

    if (repro->parsed()) {
      return lambek::run_repro(only, std::cout, json);
    }
  } catch (const lambek::ParseError& e) {
    std::cerr << "parse error at " << e.pos << ": " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
