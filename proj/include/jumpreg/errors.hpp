#pragma once

#include <stdexcept>
#include <string>

namespace jumpreg {

enum class Errc {
  empty_window,
  non_increasing,
  infeasible,
  too_large,
  index_order,
  bad_param,
  mismatch,
  boundary_max,
  bad_prob,
  degenerate_sigma,
  rank_deficient,
  too_few,
  parse_error,
  duplicate_x,
  empty_file,
  bad_prior,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

// CLI exit codes: 0 success, 2 input error, 3 infeasible config,
// 4 numerical degeneracy.
int exit_code(Errc code);

}  // namespace jumpreg
