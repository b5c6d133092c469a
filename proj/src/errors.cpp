#include "jumpreg/errors.hpp"

namespace jumpreg {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::empty_window: return "EmptyWindow";
    case Errc::non_increasing: return "NonIncreasing";
    case Errc::infeasible: return "Infeasible";
    case Errc::too_large: return "TooLarge";
    case Errc::index_order: return "IndexOrder";
    case Errc::bad_param: return "BadParam";
    case Errc::mismatch: return "Mismatch";
    case Errc::boundary_max: return "BoundaryMax";
    case Errc::bad_prob: return "BadProb";
    case Errc::degenerate_sigma: return "DegenerateSigma";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::too_few: return "TooFew";
    case Errc::parse_error: return "ParseError";
    case Errc::duplicate_x: return "DuplicateX";
    case Errc::empty_file: return "EmptyFile";
    case Errc::bad_prior: return "BadPrior";
    case Errc::io_error: return "IoError";
  }
  return "Unknown";
}

int exit_code(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::duplicate_x:
    case Errc::empty_file:
    case Errc::bad_param:
    case Errc::bad_prob:
    case Errc::bad_prior:
    case Errc::non_increasing:
    case Errc::io_error:
      return 2;
    case Errc::infeasible:
    case Errc::too_large:
    case Errc::too_few:
    case Errc::empty_window:
    case Errc::index_order:
    case Errc::mismatch:
      return 3;
    case Errc::degenerate_sigma:
    case Errc::rank_deficient:
    case Errc::boundary_max:
      return 4;
  }
  return 1;
}

}  // namespace jumpreg
