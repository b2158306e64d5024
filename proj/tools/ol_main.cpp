#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ol/encoders.hpp"
#include "ol/epr.hpp"
#include "ol/families.hpp"
#include "ol/io.hpp"
#include "ol/oracles.hpp"
#include "ol/preprocess.hpp"
#include "ol/prover.hpp"

namespace {

constexpr int kExitProvable = 0;
constexpr int kExitNotProvable = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ol::Error(ol::Error::Code::Argument, "cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Propositional view of a problem document: EPR problems are grounded,
/// bound constants are eliminated.
ol::Problem load_propositional(ol::Interner& in, const std::string& path) {
  ol::ParsedProblem parsed = ol::parse_problem(in, read_file(path), /*allow_reserved=*/true);
  ol::Problem p = ol::is_epr(parsed) ? ol::ground(in, std::get<ol::EprProblem>(parsed))
                                     : std::get<ol::Problem>(parsed);
  return ol::eliminate_bounds(in, p);
}

void print_stats(const ol::ProveStats& stats) {
  std::cout << "visitedCount=" << stats.visited << "\n"
            << "expandedEdges=" << stats.edges << "\n"
            << "elapsedMicros=" << stats.elapsed_micros << "\n";
}

int exit_code_for(const ol::Error& e) {
  switch (e.code()) {
    case ol::Error::Code::Resource:
    case ol::Error::Code::Cap:
      return kExitResource;
    default:
      return kExitInputError;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Decision procedures for orthologic with axioms"};
  app.require_subcommand(1);

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "Decide a problem file");
  std::string prove_file, proof_out, engine_name = "fixpoint";
  bool merge_flag = false, stats_flag = false, oracle_flag = false;
  prove_cmd->add_option("file", prove_file, "problem document")->required();
  prove_cmd->add_option("--proof", proof_out, "write the proof here when provable");
  prove_cmd->add_option("--engine", engine_name, "fixpoint|backward")
      ->check(CLI::IsMember({"fixpoint", "backward"}));
  prove_cmd->add_flag("--merge-axioms", merge_flag, "merge axioms sharing a side first");
  prove_cmd->add_flag("--stats", stats_flag, "print search statistics");
  prove_cmd->add_flag("--oracle", oracle_flag, "also print the classical truth-table verdict");

  // check
  auto* check_cmd = app.add_subcommand("check", "Validate a proof against a problem");
  std::string check_proof_file, check_problem_file;
  check_cmd->add_option("proof", check_proof_file, "proof file")->required();
  check_cmd->add_option("problem", check_problem_file, "problem document")->required();

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Encode a DIMACS CNF as a problem document");
  std::string dimacs_file;
  encode_cmd->add_option("--dimacs", dimacs_file, "DIMACS CNF file")->required();

  // ground
  auto* ground_cmd = app.add_subcommand("ground", "Ground an EPR problem document");
  std::string ground_file;
  ground_cmd->add_option("file", ground_file, "problem document")->required();

  // datalog
  auto* datalog_cmd = app.add_subcommand("datalog", "Answer a query over a Horn program");
  std::string datalog_file, query_text;
  datalog_cmd->add_option("file", datalog_file, "program document")->required();
  datalog_cmd->add_option("--query", query_text, "ground atom, e.g. path(a,c)")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Emit a CSV scaling table");
  std::string family = "chain";
  int n_max = 2048, n_min = 64;
  bench_cmd->add_option("--family", family, "chain|cnf")
      ->check(CLI::IsMember({"chain", "cnf"}));
  bench_cmd->add_option("--n-max", n_max, "largest size");
  bench_cmd->add_option("--n-min", n_min, "smallest size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  ol::Interner in;

  if (prove_cmd->parsed()) {
    ol::Problem p = load_propositional(in, prove_file);
    if (merge_flag) p = ol::Problem::make(ol::merge_axioms(in, p.axioms), p.goal);
    ol::Engine engine =
        engine_name == "backward" ? ol::Engine::Backward : ol::Engine::Fixpoint;
    ol::ProveResult res = ol::prove(in, p, engine);
    bool provable = res.verdict == ol::Verdict::Provable;
    std::cout << (provable ? "PROVABLE" : "NOT-PROVABLE") << "\n";
    if (stats_flag) print_stats(res.stats);
    if (oracle_flag) {
      ol::OracleVerdict v = ol::classical_verdict(in, p);
      std::cout << "classicalOracle=" << (v.holds ? "holds" : "does-not-hold") << "\n";
    }
    if (provable && !proof_out.empty()) {
      std::ofstream out(proof_out);
      if (!out)
        throw ol::Error(ol::Error::Code::Argument, "cannot write file: " + proof_out);
      out << ol::emit_proof(in, res.proof);
    }
    return provable ? kExitProvable : kExitNotProvable;
  }

  if (check_cmd->parsed()) {
    ol::Problem p = load_propositional(in, check_problem_file);
    ol::ProofPtr proof = ol::parse_proof(in, read_file(check_proof_file));
    ol::CheckReport report;
    bool ok = ol::check_proof(in, proof, p.axioms, &report);
    if (ok && !(proof->conclusion == p.goal)) {
      ok = false;
      report.path = "root";
      report.error = "proof concludes a different sequent than the goal";
    }
    if (ok) {
      std::cout << "VALID\n";
      return kExitProvable;
    }
    std::cout << "INVALID at " << report.path << ": " << report.error << "\n";
    return kExitNotProvable;
  }

  if (encode_cmd->parsed()) {
    std::vector<std::string> warnings;
    ol::CnfInstance inst = ol::parse_dimacs(read_file(dimacs_file), &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    std::cout << ol::print_problem(in, ol::encode_instance(in, inst));
    return kExitProvable;
  }

  if (ground_cmd->parsed()) {
    ol::ParsedProblem parsed = ol::parse_problem(in, read_file(ground_file));
    if (!ol::is_epr(parsed))
      throw ol::Error(ol::Error::Code::Argument,
                      "problem is already propositional; nothing to ground");
    std::cout << ol::print_problem(in, ol::ground(in, std::get<ol::EprProblem>(parsed)));
    return kExitProvable;
  }

  if (datalog_cmd->parsed()) {
    ol::ParsedProblem parsed = ol::parse_problem(in, read_file(datalog_file));
    if (!ol::is_epr(parsed))
      throw ol::Error(ol::Error::Code::Shape, "datalog needs a predicate program");
    ol::FormulaId query = ol::parse_formula(in, query_text);
    bool answer = ol::datalog_solve(in, std::get<ol::EprProblem>(parsed), query);
    std::cout << (answer ? "true" : "false") << "\n";
    return answer ? kExitProvable : kExitNotProvable;
  }

  // bench
  std::cout << "family,n,axioms,visited,edges,micros\n";
  std::mt19937 rng(20240817);
  for (int n = n_min; n <= n_max; n *= 2) {
    ol::Problem p;
    if (family == "chain") {
      p = ol::chain_problem(in, n);
    } else {
      p = ol::encode_instance(in, ol::random_cnf(rng, n, 2 * n, 2));
    }
    ol::ProveResult res = ol::prove(in, p);
    std::cout << family << "," << n << "," << p.axioms.size() << "," << res.stats.visited
              << "," << res.stats.edges << "," << res.stats.elapsed_micros << "\n";
  }
  return kExitProvable;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
