#include "critpd/tv/image.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <random>

namespace critpd::tv {

ImageGrid::ImageGrid(HVector pixels, double peak) : pixels_(std::move(pixels)), peak_(peak) {
  if (pixels_.dims().size() != 2) throw DimensionError("ImageGrid: pixels must carry a two-dimensional shape");
  if (rows() < 2 || cols() < 2) {
    throw DimensionError(fmt::format("ImageGrid: {}x{} grid is too small", rows(), cols()));
  }
  if (!(peak_ > 0.0) || !std::isfinite(peak_)) throw DomainError("ImageGrid: peak must be positive");
  if (!pixels_.all_finite()) throw DomainError("ImageGrid: non-finite pixel");
}

ImageGrid ImageGrid::zeros(Index n1, Index n2, double peak) { return ImageGrid(HVector::zeros({n1, n2}), peak); }

ImageGrid add_gaussian_noise(const ImageGrid& img, double std_rel, std::uint64_t seed) {
  if (!(std_rel >= 0.0)) throw DomainError("add_gaussian_noise: std_rel must be nonnegative");
  ImageGrid out = img;
  if (std_rel == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std_rel * img.peak());
  auto& v = out.pixels().values();
  for (Index i = 0; i < v.size(); ++i) v[i] += normal(rng);
  return out;
}

double psnr(const ImageGrid& x, const ImageGrid& ref) {
  if (x.rows() != ref.rows() || x.cols() != ref.cols()) throw DimensionError("psnr: image sizes differ");
  const double err = squared_norm(x.pixels() - ref.pixels());
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  const double peak = ref.peak();
  return 10.0 * std::log10(peak * peak * static_cast<double>(ref.size()) / err);
}

ImageGrid make_synthetic_image(Index n1, Index n2, double peak) {
  ImageGrid img = ImageGrid::zeros(n1, n2, peak);
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      const double y = (static_cast<double>(i) + 0.5) / static_cast<double>(n1);
      const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(n2);
      double v = 0.15;
      if (x > 0.1 && x < 0.55 && y > 0.15 && y < 0.45) v = 0.7;
      if (std::hypot(x - 0.65, y - 0.65) < 0.2) v = 0.9;
      if (std::abs(x - y + 0.35) < 0.06) v = 0.4;
      if (x > 0.7 && y < 0.25) v = 0.0;
      img.at(i, j) = v * peak;
    }
  }
  return img;
}

}  // namespace critpd::tv
