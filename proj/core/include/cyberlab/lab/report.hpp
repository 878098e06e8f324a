#pragma once

#include <filesystem>
#include <iosfwd>

namespace cyberlab::lab {

/// Prints a summary of a finished run (config, stage timings, metrics next to
/// reference values) and writes `report.csv` with `metric,value,reference`
/// beside the manifest. Returns an exit code; outputs listed in the manifest
/// but missing on disk are a runtime error.
int report(const std::filesystem::path& manifest, std::ostream& out, std::ostream& err);

}  // namespace cyberlab::lab
