#pragma once

// Command dispatch over parsed model files, expectation checking, and the corpus run.

#include <cstdint>
#include <string>
#include <vector>

#include "gcred/model_file.hpp"
#include "gcred/report.hpp"

namespace gcred {

/// A command cannot run on this file (missing section or declaration).
class UsageError : public GcredError {
 public:
  using GcredError::GcredError;
};

struct CommandOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  int oracle_trials = 40;     // randomized lifts per reduced bracket comparison
  int sampled_actions = 10;   // random preserved actions per SKT model in corpus-verify
};

const std::vector<std::string>& command_names();

/// Every command except corpus-verify. Throws UsageError for unknown commands or missing objects.
Report run_command(const std::string& command, const ModelFile& file, const CommandOptions& options = {});

/// Compares each [expect] entry with the computed verdict, and runs the property checks.
Report verify_model(const ModelFile& file, const CommandOptions& options = {});

/// Parses and verifies every *.gcm file of the directory, in name order, on `threads` workers.
Report corpus_verify(const std::string& directory, const CommandOptions& options = {});

/// "abelian dim 3" or "dim 3: [e1,e2] = 2 e2; [e1,e3] = e3".
std::string describe_algebra(const LieAlgebra& algebra);

/// "e1 -> e2, e2 -> -e1" for an operator on m.
std::string render_operator(const Matrix<Rational>& op);

/// The model emitted and parsed again reproduces its structure constants and twist.
Check round_trip_check(const CourantModel& model);

}  // namespace gcred
