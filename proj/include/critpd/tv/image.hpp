#pragma once

#include "critpd/hvector.hpp"

#include <cstdint>

namespace critpd::tv {

/// Grayscale image of n1 x n2 pixels (row-major, dims {n1, n2}) with a
/// dynamic range [0, peak].
class ImageGrid {
 public:
  ImageGrid(HVector pixels, double peak = 255.0);
  static ImageGrid zeros(Index n1, Index n2, double peak = 255.0);

  Index rows() const noexcept { return pixels_.dims()[0]; }
  Index cols() const noexcept { return pixels_.dims()[1]; }
  Index size() const noexcept { return pixels_.size(); }
  double peak() const noexcept { return peak_; }

  double& at(Index i, Index j) { return pixels_[i * cols() + j]; }
  double at(Index i, Index j) const { return pixels_[i * cols() + j]; }

  const HVector& pixels() const noexcept { return pixels_; }
  HVector& pixels() noexcept { return pixels_; }

 private:
  HVector pixels_;
  double peak_;
};

/// Adds i.i.d. N(0, (std_rel * peak)^2) noise, deterministic per seed.
ImageGrid add_gaussian_noise(const ImageGrid& img, double std_rel, std::uint64_t seed);

/// 10 log10(peak^2 N / ||x - ref||^2) with the reference's peak; +inf when x == ref.
double psnr(const ImageGrid& x, const ImageGrid& ref);

/// Piecewise-constant test scene (background, rectangle, disk, diagonal band)
/// scaled to the grid and to [0, peak].
ImageGrid make_synthetic_image(Index n1, Index n2, double peak);

}  // namespace critpd::tv
