#include "biocomb/csv.h"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "biocomb/errors.h"

namespace biocomb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ValidationError("CSV line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, std::size_t line, const std::string& column) {
  if (field.empty()) fail(line, "missing value in column '" + column + "'");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE || !std::isfinite(v)) {
    fail(line, "column '" + column + "' has non-numeric or non-finite value '" + field + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> default_biomarker_names(std::size_t p) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < p; ++k) names.push_back("T" + std::to_string(k + 1));
  return names;
}

PanelFile read_panel_csv(std::istream& in, LabelKind kind) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) throw ValidationError("CSV input is empty");
  if (line_no == 1 && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  std::size_t label_col = header.size();
  std::vector<std::string> names;
  std::vector<std::size_t> marker_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") {
      if (label_col != header.size()) fail(line_no, "duplicate 'label' column");
      label_col = c;
    } else {
      if (header[c].empty()) fail(line_no, "empty column name");
      names.push_back(header[c]);
      marker_cols.push_back(c);
    }
  }
  if (label_col == header.size()) fail(line_no, "header has no 'label' column");
  if (marker_cols.empty()) fail(line_no, "header has no biomarker columns");

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      fail(line_no, "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
    }
    const std::string& lab = fields[label_col];
    if (lab == "1") {
      labels.push_back(1);
    } else if (lab == "0") {
      labels.push_back(0);
    } else {
      fail(line_no, "label must be 0 or 1, found '" + lab + "'");
    }
    std::vector<double> row;
    row.reserve(marker_cols.size());
    for (std::size_t k = 0; k < marker_cols.size(); ++k) {
      row.push_back(parse_number(fields[marker_cols[k]], line_no, names[k]));
    }
    rows.push_back(std::move(row));
  }

  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(marker_cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < marker_cols.size(); ++k) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return PanelFile{BiomarkerPanel(std::move(x), std::move(labels), kind), std::move(names)};
}

PanelFile read_panel_csv_file(const std::string& path, LabelKind kind) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  return read_panel_csv(in, kind);
}

void write_panel_csv(std::ostream& out, const BiomarkerPanel& panel, const std::vector<std::string>& names) {
  if (names.size() != panel.biomarkers()) throw ValidationError("column name count does not match biomarkers");
  out << "label";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  char buf[32];
  const auto& x = panel.measurements();
  for (std::size_t i = 0; i < panel.rows(); ++i) {
    out << panel.labels()[i];
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", x(static_cast<Eigen::Index>(i), k));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace biocomb
