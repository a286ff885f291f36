#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdimlab/gdim.hpp"
#include "gdimlab/serialize.hpp"

namespace gdimlab {

/// Directory of named JSON artifacts.  Names are restricted to
/// [A-Za-z0-9._-] and map to <dir>/<name>.json; typed loads re-validate
/// every invariant (and re-verify certificates) before handing the object
/// back.
class SessionStore {
  public:
    explicit SessionStore(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::filesystem::path path_of(const std::string& name) const;
    bool exists(const std::string& name) const;
    /// Stored artifact names, sorted.
    std::vector<std::string> names() const;

    void save(const std::string& name, const nlohmann::json& doc) const;
    nlohmann::json load(const std::string& name) const;

    void save_ring(const std::string& name, const GradedAlgebra& R) const;
    AlgebraPtr load_ring(const std::string& name) const;
    void save_module(const std::string& name, const GradedModule& M) const;
    GradedModule load_module(const std::string& name, const AlgebraPtr& R) const;
    void save_certificate(const std::string& name, const GdimCertificate& c) const;
    GdimCertificate load_certificate(const std::string& name, const AlgebraPtr& R) const;

  private:
    std::filesystem::path dir_;
};

/// A named verification suite with its knobs.  Unused knobs are ignored by
/// presets that do not read them; r must be at least 2 everywhere (the
/// quotient rings the suites study are non-Gorenstein by hypothesis).
struct PresetOptions {
    std::string name; // thm31 | thm42 | thm51 | thm61 | negcontrols
    std::uint32_t p = 101;
    std::uint64_t seed = 0;
    std::size_t n = 8;     // resolution depth cap
    std::size_t r = 2;     // circulant size for thm42/thm51
    std::size_t count = 5; // sampled family points (thm51)
    std::size_t nmax = 3;  // n_terms range (thm42) / family sizes (thm51)
    std::size_t umax = 3, smax = 3, len = 3; // obstruction grid (thm61)
};

struct PresetResult {
    int exit_code = 0;     // 0 all checks verified, 1 at least one failed
    nlohmann::json report; // {"schema":1,"kind":"report",...}; no timestamp
    std::string csv;       // tables; first line is a "# generated ..." stamp
};

/// Runs the named suite.  The JSON report is byte-deterministic for a fixed
/// option set; the CSV differs only in its first line.  Throws InputError on
/// invalid options (unknown name, r < 2); mathematical failures are returned
/// as exit_code 1 with the first counterexample recorded in the report.
PresetResult run_preset(const PresetOptions& opt);

/// Writes <name>_report.json and <name>_report.csv into dir (created if
/// missing) and returns the two paths.
std::pair<std::filesystem::path, std::filesystem::path>
write_report(const PresetResult& res, const std::filesystem::path& dir, const std::string& name);

} // namespace gdimlab
