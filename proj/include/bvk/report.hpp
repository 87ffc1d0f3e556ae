#pragma once

// Residual reports shared by every verification suite, plus the JSON/CSV
// serialization used by the CLI.  Pass/fail is always max_residual vs
// tolerance; residuals are relative: |lhs - rhs| / max(1, |lhs|, |rhs|).

#include <string>
#include <vector>

#include "bvk/bicomplex.hpp"

namespace bvk {

struct ResidualReport {
    std::string suite;
    std::string case_id;
    std::string anchor;  // stable id of the identity being certified
    std::string grid;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
    std::string note;

    void finalize() { pass = max_residual <= tolerance; }
};

// Streaming max/mean accumulator for per-point residuals.
class ResidualAccumulator {
  public:
    void add(double r) {
        if (r > max_) max_ = r;
        sum_ += r;
        ++count_;
    }
    double max() const { return max_; }
    double mean() const { return count_ ? sum_ / count_ : 0.0; }
    std::size_t count() const { return count_; }

    void apply(ResidualReport& rep) const {
        rep.max_residual = max();
        rep.mean_residual = mean();
        rep.finalize();
    }

  private:
    double max_ = 0.0;
    double sum_ = 0.0;
    std::size_t count_ = 0;
};

inline double relative_diff(const Bicomplex& a, const Bicomplex& b) {
    double scale = std::max({1.0, euclid_norm(a), euclid_norm(b)});
    return euclid_norm(a - b) / scale;
}

enum class ReportFormat { json, csv };

extern const char* const kReportSchemaVersion;

std::string reports_to_json(const std::vector<ResidualReport>& reports);
std::string reports_to_csv(const std::vector<ResidualReport>& reports);
std::vector<ResidualReport> reports_from_json(const std::string& text);

// Writes to path (or stdout when path is empty).  Throws IoError.
void emit_report(const std::vector<ResidualReport>& reports, ReportFormat format,
                 const std::string& path);

}  // namespace bvk
