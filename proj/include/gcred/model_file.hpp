#pragma once

// The line-oriented .gcm model format: parsing into validated objects and emitting models
// back to text. The grammar is documented in FORMAT.md.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcred/action.hpp"
#include "gcred/courant.hpp"
#include "gcred/metric.hpp"
#include "gcred/structures.hpp"

namespace gcred {

struct ParseIssue {
  std::size_t line = 0;  // 1-based; 0 for whole-file problems
  std::string message;
};

class ParseError : public GcredError {
 public:
  explicit ParseError(std::vector<ParseIssue> issues);
  const std::vector<ParseIssue>& issues() const { return issues_; }

 private:
  std::vector<ParseIssue> issues_;
};

enum class StructureKind { skt, hkt, gk };

struct StructureDecl {
  StructureKind kind = StructureKind::skt;
  std::vector<std::string> operators;  // names in [complex] or [generalized]
  Side side = Side::plus;
  std::size_t line = 0;
};

struct Expectation {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

struct ModelFile {
  std::string name;  // file name without directories
  LieAlgebra algebra;
  Named<Form<Rational>> forms;
  CourantModel model;
  std::optional<GeneralizedMetric> metric;
  Named<Matrix<Rational>> complex;      // on m
  Named<Matrix<Rational>> generalized;  // on m + m*
  std::optional<ExtendedAction> action;
  std::optional<std::vector<Vec<Rational>>> connection;
  std::vector<StructureDecl> structures;
  std::vector<Expectation> expectations;

  const Matrix<Rational>& complex_structure(const std::string& name) const;
  const Matrix<Rational>* find_complex(const std::string& name) const;
  const Matrix<Rational>* find_generalized(const std::string& name) const;
  const Expectation* expectation(const std::string& key) const;
};

ModelFile parse_model(const std::string& text, const std::string& name = "<input>");

/// Throws ParseError with line 0 if the file cannot be read.
ModelFile parse_model_file(const std::string& path);

/// A form expression over f1..f<dim>; degree -1 infers it.
Form<Rational> parse_form(const std::string& text, std::size_t dim, int degree = -1);

/// "identity" or "diag(d1, ..., dn)".
Matrix<Rational> parse_metric_matrix(const std::string& text, std::size_t dim);

struct EmitOptions {
  std::optional<GeneralizedMetric> metric;
  Named<Matrix<Rational>> complex;
  std::string comment;
};

/// A model file with [algebra], [courant] and, when given, [metric] and [complex] sections.
std::string emit_model(const CourantModel& model, const EmitOptions& options = {});

/// Linear combination of basis labels ("e1 - 1/2 e3", "f2", "a1 + l2").
std::string render_vector(const Vec<Rational>& v, char label);

}  // namespace gcred
