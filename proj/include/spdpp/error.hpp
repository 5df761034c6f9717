#pragma once

#include <stdexcept>
#include <string>

namespace spdpp {

enum class ErrorCode {
  input,        // malformed or out-of-range arguments
  not_psd,      // matrix has eigenvalues clearly below zero
  numerical,    // eigensolver failure, loss of rank, non-finite result
  infeasible,   // size k cannot be realised by the spectrum
  convergence,  // iterative solver hit its iteration cap
  degenerate,   // quantity needed for a correction vanishes
  budget,       // enumeration refused by the size guard
  io,           // file could not be read or parsed
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spdpp
