#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gcred/commands.hpp"

#ifndef GCRED_CORPUS_DIR
#define GCRED_CORPUS_DIR "corpus"
#endif

namespace {

constexpr int kPass = 0;
constexpr int kVerdictFailure = 1;
constexpr int kUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reduction of invariant Courant algebroids and their structures"};
  std::string command;
  std::string file;
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string emit_path;
  bool timing = false;
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(gcred::command_names()));
  app.add_option("file", file, "Model file (.gcm), or corpus directory for corpus-verify");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for randomized property checks");
  app.add_option("--threads", threads, "Worker threads for corpus-verify")->check(CLI::Range(1U, 256U));
  app.add_option("--emit", emit_path, "Write the reduced model to this file (reduce, reduce-skt)");
  app.add_flag("--timing", timing, "Append elapsed time to text reports");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  gcred::CommandOptions options;
  options.seed = seed;
  options.threads = threads;
  auto start = std::chrono::steady_clock::now();
  gcred::Report report;
  try {
    if (command == "corpus-verify") {
      report = gcred::corpus_verify(file.empty() ? GCRED_CORPUS_DIR : file, options);
    } else {
      if (file.empty()) {
        std::cerr << "gcred: " << command << " needs a model file\n";
        return kUsage;
      }
      report = gcred::run_command(command, gcred::parse_model_file(file), options);
    }
  } catch (const gcred::ParseError& e) {
    std::cerr << "gcred: " << file << ":\n" << e.what() << "\n";
    return kUsage;
  } catch (const gcred::UsageError& e) {
    std::cerr << "gcred: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gcred: " << e.what() << "\n";
    return kVerdictFailure;
  }
  if (timing) {
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  std::cout << (format == "json" ? gcred::render_json(report) : gcred::render_text(report));
  if (!emit_path.empty()) {
    if (report.reduced_model.empty()) {
      std::cerr << "gcred: " << command << " produces no reduced model to emit\n";
      return kUsage;
    }
    std::ofstream out(emit_path, std::ios::binary);
    out << report.reduced_model;
    if (!out) {
      std::cerr << "gcred: cannot write " << emit_path << "\n";
      return kUsage;
    }
  }
  return report.passed() ? kPass : kVerdictFailure;
}
