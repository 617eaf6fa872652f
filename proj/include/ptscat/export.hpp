#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ptscat/smatrix.hpp"
#include "ptscat/spectral.hpp"
#include "ptscat/sweep.hpp"

namespace ptscat {

/// Provenance for a resolved configuration text (hash plus library version).
Provenance make_provenance(const std::string& config_hash);

// CSV: "," delimiter, "." decimal, 17 significant digits, header row of field
// names. Provenance goes in leading "# key=value" lines.
std::string transparency_csv(const TransparencyReport& rep, const Provenance& prov);
std::string scatter_csv(const ScatteringData& data, const SMatrixAnalysis& a, const Provenance& prov);
std::string spectral_csv(const SpectralReport& rep, const Provenance& prov);
std::string sweep_csv(const SweepGrid& grid);
std::string vbeta_csv(const VbetaResult& res, const Provenance& prov);

// JSON mirrors the type structure; complex numbers are [re, im] pairs and
// non-finite values are written as null.
std::string transparency_json(const TransparencyReport& rep, const Provenance& prov);
std::string scatter_json(const ScatteringData& data, const SMatrixAnalysis& a, const Provenance& prov);
std::string spectral_json(const SpectralReport& rep, const Provenance& prov);
std::string sweep_json(const SweepGrid& grid);
std::string vbeta_json(const VbetaResult& res, const Provenance& prov);

/// Inverse of sweep_json; reproduces every double bit for bit.
SweepGrid sweep_from_json(std::string_view text);

/// Writes text to path, replacing the file. IoError names the path on failure.
void write_file(const std::filesystem::path& path, std::string_view text);
std::string read_file(const std::filesystem::path& path);

}  // namespace ptscat
