// Error taxonomy shared across the toolkit. Each error names the failing
// stage; numeric failures carry enough context to reproduce.
#pragma once

#include <stdexcept>
#include <string>

namespace dbs {

struct InvalidSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeshFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int line = 0;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularPivot : std::runtime_error {
  int index = -1;
  explicit SingularPivot(int index_)
      : std::runtime_error("singular pivot at index " + std::to_string(index_)),
        index(index_) {}
};

struct NoConvergence : std::runtime_error {
  int iterations = 0;
  explicit NoConvergence(int iterations_)
      : std::runtime_error("no convergence after " + std::to_string(iterations_) +
                           " Krylov iterations"),
        iterations(iterations_) {}
};

struct AmbiguousCluster : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NearResonance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RefineNeeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroEndpoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AllBelowThreshold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AssumptionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Resonant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BranchNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TheoremViolation : std::runtime_error {
  std::string evidence;  // JSON evidence table
  TheoremViolation(const std::string& what_, std::string evidence_)
      : std::runtime_error(what_), evidence(std::move(evidence_)) {}
};

struct ConfigError : std::runtime_error {
  std::string pointer;  // JSON pointer to the offending field
  ConfigError(std::string pointer_, const std::string& what_)
      : std::runtime_error(pointer_ + ": " + what_), pointer(std::move(pointer_)) {}
};

}  // namespace dbs
