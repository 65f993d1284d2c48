#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gcoh/errors.hpp"
#include "gcoh/jobs.hpp"

using namespace gcoh;

namespace {

Json read_document(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const Json& report, const std::string& output) {
  std::string text = report.dump(2) + "\n";
  if (output.empty())
    std::cout << text;
  else
    write_atomic(output, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Massey products, transfers and Hilbert 90 checks for finite and presented groups"};
  app.require_subcommand(1);

  std::string input, output, scenario;
  unsigned long long budget = 0;
  unsigned prime = 0;
  std::size_t exponent = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", output, "Write the report here instead of stdout");
  };
  auto add_job = [&](CLI::App* sub) {
    sub->add_option("input", input, "Input document (JSON)")->required();
    sub->add_option("--prime", prime, "Prime p for the coefficients");
    sub->add_option("--budget", budget, "Enumeration budget")->check(CLI::PositiveNumber);
    add_common(sub);
  };

  CLI::App* massey = app.add_subcommand("massey", "Decide whether a Massey product is defined and vanishes");
  add_job(massey);
  CLI::App* cohomology = app.add_subcommand("cohomology", "Mod-p cohomology data of a finite group");
  add_job(cohomology);
  cohomology->add_option("--modulus-exponent", exponent, "Run formal Hilbert 90 probes up to Z/p^k")
      ->check(CLI::Range(1, 8));
  CLI::App* verify = app.add_subcommand("verify", "Run a bundled verification scenario");
  verify->add_option("--scenario,scenario", scenario,
                     "paper-example, lemma-i+n, u3-resolution, exactness-sweep or formal-h90")
      ->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  JobOptions options;
  if (prime) options.prime = prime;
  if (budget) options.budget = budget;
  if (exponent) options.modulus_exponent = exponent;

  try {
    Json doc;
    if (*massey || *cohomology) {
      doc = read_document(input);
      // A scenario document runs like the verify subcommand.
      if (doc.is_object() && doc.value("type", "") == "scenario") scenario = doc.at("scenario").get<std::string>();
    }
    if (scenario.empty() && *massey) {
      emit(run_massey(doc, options), output);
    } else if (scenario.empty()) {
      emit(run_cohomology(doc, options), output);
    } else {
      Json report = run_verify(scenario);
      emit(report, output);
      if (!report["passed"].get<bool>()) {
        std::cerr << "scenario " << scenario << " failed\n";
        return kExitInternal;
      }
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (examined " << e.examined() << ")\n";
    return kExitBudget;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
