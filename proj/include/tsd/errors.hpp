#pragma once

#include <stdexcept>
#include <string>

namespace tsd {

enum class errc {
  non_edge_slide,
  empty_source_vertex,
  final_overlap,
  size_mismatch,
  parse_error,
  schema_violation,
  syntax_error,
  unbound_variable,
  duplicate_binder,
  unassigned_free_variable,
  negative_budget,
  unknown_name,
  search_space_too_large,
  fragment_unsupported,
  unbalanced_intervals,
  invalid_decomposition,
  state_budget_exceeded,
  invalid_source_solution,
  invalid_instance,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_edge_slide: return "NonEdgeSlide";
    case errc::empty_source_vertex: return "EmptySourceVertex";
    case errc::final_overlap: return "FinalOverlap";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::parse_error: return "ParseError";
    case errc::schema_violation: return "SchemaViolation";
    case errc::syntax_error: return "SyntaxError";
    case errc::unbound_variable: return "UnboundVariable";
    case errc::duplicate_binder: return "DuplicateBinder";
    case errc::unassigned_free_variable: return "UnassignedFreeVariable";
    case errc::negative_budget: return "NegativeBudget";
    case errc::unknown_name: return "UnknownName";
    case errc::search_space_too_large: return "SearchSpaceTooLarge";
    case errc::fragment_unsupported: return "FragmentUnsupported";
    case errc::unbalanced_intervals: return "UnbalancedIntervals";
    case errc::invalid_decomposition: return "InvalidDecomposition";
    case errc::state_budget_exceeded: return "StateBudgetExceeded";
    case errc::invalid_source_solution: return "InvalidSourceSolution";
    case errc::invalid_instance: return "InvalidInstance";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace tsd
