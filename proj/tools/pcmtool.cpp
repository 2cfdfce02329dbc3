// pcmtool: complete incomplete pairwise comparison matrices from the command
// line, run the order-4 coincidence check, emit counterexamples and batch
// sweeps, or serve the session API.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "pcm/batch.hpp"
#include "pcm/canonical4.hpp"
#include "pcm/eigenvalue.hpp"
#include "pcm/experiments.hpp"
#include "pcm/graph.hpp"
#include "pcm/io.hpp"
#include "pcm/service.hpp"

#include <httplib.h>

namespace {

enum Exit { kOk = 0, kValidation = 1, kDisconnected = 2, kConvergence = 3 };

pcm::IncompletePCM load(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw pcm::ParseError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string fmt = format;
  if (fmt.empty()) fmt = path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? "json" : "csv";
  return pcm::parse_matrix(buf.str(), pcm::parse_format(fmt));
}

std::string pos(const pcm::Position& p) {
  return "(" + std::to_string(p.row + 1) + "," + std::to_string(p.col + 1) + ")";
}

void print_result(std::ostream& out, const pcm::CompletionResult& r) {
  out << "[" << pcm::to_string(r.method) << "]\n";
  out << std::fixed << std::setprecision(4);
  for (int i = 0; i < r.order(); ++i) {
    out << " ";
    for (int j = 0; j < r.order(); ++j) out << ' ' << std::setw(9) << r.matrix(i, j) << (r.is_filled(i, j) ? '*' : ' ');
    out << '\n';
  }
  out << "  weights:";
  for (int i = 0; i < r.weights.size(); ++i) out << ' ' << std::setprecision(6) << r.weights[i];
  out << std::setprecision(10) << "\n  lambda_max = " << r.lambda_max << "  CI = " << r.ci << "  GCI = " << r.gci
      << "\n";
  out.unsetf(std::ios::floatfield);
}

void print_comparison(std::ostream& out, const pcm::CompletionComparison& c) {
  out << "comparison (tolerance " << c.tolerance << ")\n";
  for (const auto& p : c.llsm.filled)
    out << "  " << pos(p) << std::fixed << std::setprecision(4) << "  llsm " << c.llsm.matrix(p.row, p.col) << "  ev "
        << c.ev.matrix(p.row, p.col) << std::scientific << std::setprecision(3)
        << "  |log ratio| " << c.divergence(p.row, p.col) << '\n';
  out.unsetf(std::ios::floatfield);
  out << "  max divergence " << c.max_divergence;
  if (c.max_position) out << " at " << pos(*c.max_position);
  out << "\n  coincide = " << (c.coincide ? "true" : "false") << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Optimal completion of incomplete pairwise comparison matrices"};
  app.require_subcommand(1);

  std::string file, method = "both", format;
  double tol = 1e-6;
  bool as_json = false;
  auto* complete = app.add_subcommand("complete", "Complete a matrix with the LLSM and/or eigenvalue method");
  complete->add_option("file", file, "Matrix file (CSV or JSON)")->required();
  complete->add_option("--method", method, "llsm, ev or both")->check(CLI::IsMember({"llsm", "ev", "both"}));
  complete->add_option("--tol", tol, "Coincidence tolerance on |log(b/c)|")->check(CLI::PositiveNumber);
  complete->add_option("--format", format, "Input format (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  complete->add_flag("--json", as_json, "Print the JSON payload instead of a text report");

  auto* verify = app.add_subcommand("verify-theorem1", "Check that both completions of an order-4 matrix coincide");
  verify->add_option("file", file, "Matrix file (CSV or JSON)")->required();
  verify->add_option("--tol", tol, "Coincidence tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "Input format")->check(CLI::IsMember({"csv", "json"}));

  int order = 5;
  auto* counter = app.add_subcommand("counterexample", "Print a matrix whose two completions differ");
  counter->add_option("--order", order, "Order n >= 5")->required();

  pcm::BatchConfig batch;
  bool serial = false;
  auto* sweep = app.add_subcommand("batch", "Compare both completions on random connected instances (CSV)");
  sweep->add_option("--n", batch.order, "Order")->required();
  sweep->add_option("--missing", batch.missing, "Missing pairs per instance")->required();
  sweep->add_option("--trials", batch.trials, "Number of instances")->required();
  sweep->add_option("--seed", batch.seed, "Seed of the first instance")->required();
  sweep->add_option("--tol", batch.tolerance, "Coincidence tolerance")->check(CLI::PositiveNumber);
  sweep->add_flag("--serial", serial, "Use the single-threaded reference loop");

  int port = 8080;
  std::string journal = "pcm-sessions.jsonl", host = "0.0.0.0";
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", port, "Listen port (PCM_PORT overrides)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--journal", journal, "Append-only session journal");

  CLI11_PARSE(app, argc, argv);

  if (*complete) {
    const auto pcm = load(file, format);
    const auto choice = pcm::service::parse_method(method);
    if (as_json) {
      pcm::require_connected(pcm);
      std::cout << pcm::service::completion_json(pcm, choice, tol).dump(2) << '\n';
      return kOk;
    }
    std::cout << "order " << pcm.order() << ", missing pairs:";
    for (const auto& p : pcm.missing_positions()) std::cout << ' ' << pos(p);
    std::cout << "\n";
    if (choice == pcm::service::MethodChoice::Both) {
      const auto cmp = pcm::compare_completions(pcm, tol);
      print_result(std::cout, cmp.llsm);
      print_result(std::cout, cmp.ev);
      print_comparison(std::cout, cmp);
    } else if (choice == pcm::service::MethodChoice::Llsm) {
      print_result(std::cout, pcm::llsm_completion(pcm));
    } else {
      print_result(std::cout, pcm::ev_completion(pcm));
    }
    return kOk;
  }
  if (*verify) {
    const auto pcm = load(file, format);
    const auto cmp = pcm::verify_theorem1(pcm, tol);
    print_comparison(std::cout, cmp);
    return cmp.coincide ? kOk : kConvergence;
  }
  if (*counter) {
    std::cout << pcm::to_csv(pcm::counterexample_of_order(order));
    return kOk;
  }
  if (*sweep) {
    const auto rows = serial ? pcm::run_batch_serial(batch) : pcm::run_batch(batch);
    std::cout << pcm::batch_csv(rows);
    return kOk;
  }
  if (*serve) {
    if (const char* env = std::getenv("PCM_PORT")) port = std::stoi(env);
    pcm::service::SessionStore store(journal);
    httplib::Server server;
    pcm::service::register_routes(server, store);
    std::cerr << "listening on " << host << ":" << port << " (" << store.size() << " sessions restored)\n";
    if (!server.listen(host, port)) {
      std::cerr << "error: cannot listen on " << host << ":" << port << '\n';
      return kValidation;
    }
    return kOk;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcm::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const pcm::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const pcm::DisconnectedGraph& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDisconnected;
  } catch (const pcm::NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
}
