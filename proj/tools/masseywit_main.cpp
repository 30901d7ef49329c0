#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "masseywit/homsearch.hpp"
#include "masseywit/oracle.hpp"
#include "masseywit/suites.hpp"
#include "masseywit/witness.hpp"

// Exit codes: 0 success, 1 failed check (triviality / verification),
// 2 exhausted budget, 3 invalid input or internal failure.

namespace {

using namespace masseywit;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& data) {
  if (out_path.empty()) {
    std::cout << data;
    if (!data.empty() && data.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw input_error("cannot write file '" + out_path + "'");
  out << data;
}

std::vector<CohClass1> parse_alphas(const std::string& arg) {
  const std::string text = (!arg.empty() && arg[0] == '[') ? arg : read_file(arg);
  try {
    return nlohmann::json::parse(text).get<std::vector<CohClass1>>();
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("--alphas: expected a JSON array of integer vectors: ") +
                      e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Unitriangular witnesses for the vanishing of Massey products over F_p"};
  app.require_subcommand(1);

  std::string spec_path, alphas_arg, out_path, cert_path, suite_name, mode = "witness";
  unsigned jobs = 1;
  u64 budget = kDefaultSearchBudget;
  u64 seed = SuiteOptions{}.seed;
  int n_flag = -1, p_flag = -1;

  auto* build = app.add_subcommand("build", "Validate a group spec and print its summary");
  build->add_option("--spec", spec_path, "Group spec JSON file")->required();

  auto* massey = app.add_subcommand("massey", "Produce a vanishing certificate for a sequence");
  massey->add_option("--spec", spec_path, "Group spec JSON file")->required();
  massey->add_option("--alphas", alphas_arg, "Classes as JSON [[..],..] or a file path")
      ->required();
  massey->add_option("--n", n_flag, "Expected sequence length (cross-check)");
  massey->add_option("--p", p_flag, "Expected prime (cross-check)");
  massey->add_option("--mode", mode, "witness, check, or crosscheck")
      ->check(CLI::IsMember({"witness", "check", "crosscheck"}))
      ->capture_default_str();
  massey->add_option("--budget", budget, "Search budget in level solutions")->capture_default_str();
  massey->add_option("--out", out_path, "Certificate output path (default stdout)");
  massey->add_option("--jobs", jobs, "Worker threads (output is identical for any count)")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate from scratch");
  verify->add_option("--cert", cert_path, "Certificate JSON file")->required();

  auto* oracle = app.add_subcommand("oracle", "Run a named cross-validation suite");
  oracle->add_option("--suite", suite_name, "Suite name (see --list)");
  bool list_suites = false;
  oracle->add_flag("--list", list_suites, "List available suites");
  oracle->add_option("--jobs", jobs, "Worker threads (reports are identical for any count)")
      ->capture_default_str();
  oracle->add_option("--seed", seed, "Base seed for the randomized suites")->capture_default_str();
  oracle->add_option("--budget", budget, "Search budget forwarded to the witness engine")
      ->capture_default_str();
  oracle->add_option("--out", out_path, "Report output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  if (build->parsed()) {
    const EtypePresentation G = parse_group_spec(read_file(spec_path));
    std::cout << presentation_summary_json(G) << "\n";
    return 0;
  }

  if (massey->parsed()) {
    const EtypePresentation G = parse_group_spec(read_file(spec_path));
    const auto alphas = parse_alphas(alphas_arg);
    if (n_flag >= 0 && static_cast<std::size_t>(n_flag) != alphas.size())
      throw input_error("--n does not match the number of classes");
    if (p_flag >= 0 && static_cast<u32>(p_flag) != G.p())
      throw input_error("--p does not match the group spec");

    if (mode == "check") {
      if (const auto bad = first_nontrivial_cup(G, alphas)) {
        std::cout << "triviality fails at i=" << (*bad + 1) << "\n";
        return 1;
      }
      std::cout << "triviality holds\n";
      return 0;
    }

    const WitnessAssignment w = massey_witness(G, alphas, budget, jobs);
    const std::string cert = certificate_to_json(G, alphas, w);
    write_output(out_path, cert);

    if (mode == "crosscheck") {
      // independent exhaustive confirmation that a witness exists
      HomSearch q;
      q.p = G.p();
      q.n = w.n;
      q.precision = G.precision();
      q.d = G.generator_count();
      q.relators = &G.relators();
      std::vector<std::vector<u32>> sd(alphas.size());
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        sd[i] = alphas[i];
        for (u32& v : sd[i]) v %= G.p();
      }
      q.superdiag = sd;
      q.jobs = jobs;
      if (!exists_hom(q))
        throw internal_error("crosscheck: no assignment found by exhaustive enumeration");
      std::cerr << "crosscheck: exhaustive enumeration confirms a witness exists\n";
    }
    return 0;
  }

  if (verify->parsed()) {
    const VerifyReport rep = verify_certificate_json(read_file(cert_path));
    std::cout << (rep.pass ? "pass" : "fail") << ": " << rep.detail << "\n";
    return rep.pass ? 0 : 1;
  }

  if (oracle->parsed()) {
    if (list_suites) {
      for (const std::string& s : suite_names()) std::cout << s << "\n";
      return 0;
    }
    if (suite_name.empty()) throw input_error("oracle: --suite NAME or --list required");
    SuiteOptions opt;
    opt.jobs = jobs;
    opt.seed = seed;
    opt.search_budget = budget;
    const SuiteResult res = run_suite(suite_name, opt);
    write_output(out_path, res.report);
    return res.pass ? 0 : 1;
  }

  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const masseywit::triviality_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const masseywit::search_exhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const masseywit::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const masseywit::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
