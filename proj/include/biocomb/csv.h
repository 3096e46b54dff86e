#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "biocomb/core.h"

namespace biocomb {

/// A panel read from or written to CSV, with its biomarker column names.
struct PanelFile {
  BiomarkerPanel panel;
  std::vector<std::string> biomarker_names;
};

/// Read a panel: a header row, a `label` column holding 0 or 1, every other
/// column a numeric biomarker (in file order). Comma separated, '.' decimal
/// separator, no missing values. Errors carry the 1-based line number.
PanelFile read_panel_csv(std::istream& in, LabelKind kind = LabelKind::GoldStandard);
PanelFile read_panel_csv_file(const std::string& path, LabelKind kind = LabelKind::GoldStandard);

/// Write `label` first, then the biomarkers, values printed round-trip exact.
void write_panel_csv(std::ostream& out, const BiomarkerPanel& panel, const std::vector<std::string>& names);

/// Default names T1..Tp.
std::vector<std::string> default_biomarker_names(std::size_t p);

}  // namespace biocomb
