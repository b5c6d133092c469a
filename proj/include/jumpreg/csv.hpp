#pragma once

#include <string>

#include "jumpreg/dataset.hpp"

namespace jumpreg {

// Reads two-column x,y CSV (decimal point, comma separator, LF or CRLF).
// Rows are sorted by x; duplicate covariates are rejected.
Dataset ingest_csv(const std::string& path, bool header = true);

}  // namespace jumpreg
