#include "cyberlab/lab/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include <json.hpp>

#include "cyberlab/lab/runner.hpp"

namespace cyberlab::lab {

int report(const std::filesystem::path& manifest, std::ostream& out, std::ostream& err) {
    std::ifstream in(manifest);
    if (!in) {
        err << "cannot read manifest '" << manifest.string() << "'\n";
        return kExitConfigError;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        err << "manifest is not valid JSON: " << e.what() << '\n';
        return kExitConfigError;
    }
    const auto dir = manifest.parent_path();
    int missing = 0;
    for (const auto& f : j.value("outputs", nlohmann::json::array())) {
        if (!std::filesystem::exists(dir / f.get<std::string>())) {
            err << "missing output: " << f.get<std::string>() << '\n';
            ++missing;
        }
    }

    out << "experiment  " << j.value("experiment", "?") << '\n';
    out << "seed        " << j.value("seed", std::uint64_t{0}) << '\n';
    out << "version     " << j.value("version", "?") << '\n';
    out << "wall clock  " << std::fixed << std::setprecision(2) << j.value("wall_clock_seconds", 0.0) << " s\n";
    out.unsetf(std::ios::floatfield);
    if (j.contains("config")) {
        out << "\nconfig\n";
        for (const auto& [k, v] : j["config"].items()) out << "  " << k << " = " << v.get<std::string>() << '\n';
    }
    if (j.contains("stages") && !j["stages"].empty()) {
        out << "\nstages\n";
        for (const auto& s : j["stages"]) {
            out << "  " << std::left << std::setw(28) << s.value("name", "") << std::right << std::fixed
                << std::setprecision(3) << s.value("seconds", 0.0) << " s\n";
        }
        out.unsetf(std::ios::floatfield);
    }

    std::ofstream csv(dir / "report.csv");
    csv << "metric,value,reference\n";
    out << "\n" << std::left << std::setw(40) << "metric" << std::setw(16) << "value" << "reference\n" << std::right;
    for (const auto& m : j.value("metrics", nlohmann::json::array())) {
        const auto name = m.value("name", "");
        const double value = m.value("value", 0.0);
        out << std::left << std::setw(40) << name << std::setw(16) << std::setprecision(6) << value;
        csv << name << ',' << std::setprecision(10) << value << ',';
        if (m.contains("reference")) {
            out << m["reference"].get<double>();
            csv << m["reference"].get<double>();
        }
        out << std::right << '\n';
        csv << '\n';
    }
    if (missing > 0) return kExitRuntimeError;
    return j.value("exit_code", 0) == kExitCheckFailed ? kExitCheckFailed : kExitOk;
}

}  // namespace cyberlab::lab
