#pragma once

#include "critpd/km.hpp"
#include "critpd/tv/image.hpp"
#include "critpd/tv/sweep.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace critpd::tv {

enum class PgmFormat { binary, ascii };

/// Reads P5 or P2 (maxval <= 255); pixels are rescaled so that maxval maps to peak.
ImageGrid read_pgm(const std::filesystem::path& path, double peak = 255.0);

/// Writes 8-bit PGM. Pixels are scaled by 255 / peak, clamped to [0, 255] and rounded.
void write_pgm(const std::filesystem::path& path, const ImageGrid& img, PgmFormat format = PgmFormat::binary);

/// Trace columns: n,residual,objective,v_displacement[,wall_ms]. Empty optional
/// fields are left blank. Reals use the shortest round-trip representation.
void write_trace_csv(std::ostream& out, const std::vector<IterTrace>& trace, bool include_timing = false);

/// Sweep columns: tau,sigma1,sigma2,sigma3,lambda,seed,iterations,converged,
/// final_residual,objective,psnr,wall_ms.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace critpd::tv
