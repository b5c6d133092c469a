#include "jumpreg/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "jumpreg/errors.hpp"

namespace jumpreg {

namespace {

double parse_field(const std::string& field, int line_no) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || end == nullptr || *end != '\0') {
    std::ostringstream msg;
    msg << "line " << line_no << ": not a number: '" << field << "'";
    throw Error(Errc::parse_error, msg.str());
  }
  return value;
}

}  // namespace

Dataset ingest_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open " + path);
  }
  std::vector<double> x, y;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && header) continue;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected two comma-separated columns";
      throw Error(Errc::parse_error, msg.str());
    }
    x.push_back(parse_field(line.substr(0, comma), line_no));
    y.push_back(parse_field(line.substr(comma + 1), line_no));
  }
  if (x.empty()) {
    throw Error(Errc::empty_file, "no data rows in " + path);
  }
  if (x.size() < 2) {
    throw Error(Errc::bad_param, "need at least two observations");
  }
  return make_dataset(std::move(x), std::move(y));
}

}  // namespace jumpreg
