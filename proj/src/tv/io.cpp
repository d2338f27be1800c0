#include "critpd/tv/io.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <stdexcept>

namespace critpd::tv {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  while (in) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
  }
  in >> tok;
  return tok;
}

long header_number(std::istream& in, const std::filesystem::path& path) {
  const std::string tok = header_token(in);
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw DomainError(fmt::format("read_pgm: {}: malformed header token '{}'", path.string(), tok));
  }
}

std::string fmt_real(double v) { return fmt::format("{}", v); }

}  // namespace

ImageGrid read_pgm(const std::filesystem::path& path, double peak) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(fmt::format("read_pgm: cannot open {}", path.string()));
  const std::string magic = header_token(in);
  if (magic != "P5" && magic != "P2") throw DomainError(fmt::format("read_pgm: {}: unsupported magic '{}'", path.string(), magic));
  const long width = header_number(in, path);
  const long height = header_number(in, path);
  const long maxval = header_number(in, path);
  if (width < 2 || height < 2 || maxval < 1 || maxval > 255) {
    throw DomainError(fmt::format("read_pgm: {}: unsupported geometry {}x{} maxval {}", path.string(), width, height, maxval));
  }
  const Index n1 = height;
  const Index n2 = width;
  ImageGrid img = ImageGrid::zeros(n1, n2, peak);
  const double scale = peak / static_cast<double>(maxval);
  if (magic == "P5") {
    in.get();
    std::vector<unsigned char> raw(static_cast<std::size_t>(n1 * n2));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) throw DomainError(fmt::format("read_pgm: {}: truncated data", path.string()));
    for (Index k = 0; k < n1 * n2; ++k) img.pixels()[k] = scale * raw[static_cast<std::size_t>(k)];
  } else {
    for (Index k = 0; k < n1 * n2; ++k) {
      long v = -1;
      if (!(in >> v) || v < 0 || v > maxval) throw DomainError(fmt::format("read_pgm: {}: bad pixel at {}", path.string(), k));
      img.pixels()[k] = scale * static_cast<double>(v);
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const ImageGrid& img, PgmFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError(fmt::format("write_pgm: cannot open {}", path.string()));
  const double scale = 255.0 / img.peak();
  auto quantize = [scale](double v) { return static_cast<int>(std::lround(std::clamp(v * scale, 0.0, 255.0))); };
  const Index n = img.size();
  if (format == PgmFormat::binary) {
    fmt::print(out, "P5\n{} {}\n255\n", img.cols(), img.rows());
    std::vector<char> raw(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) raw[static_cast<std::size_t>(k)] = static_cast<char>(quantize(img.pixels()[k]));
    out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  } else {
    fmt::print(out, "P2\n{} {}\n255\n", img.cols(), img.rows());
    for (Index i = 0; i < img.rows(); ++i) {
      for (Index j = 0; j < img.cols(); ++j) fmt::print(out, "{}{}", j ? " " : "", quantize(img.at(i, j)));
      out << '\n';
    }
  }
  if (!out) throw DomainError(fmt::format("write_pgm: write failed for {}", path.string()));
}

void write_trace_csv(std::ostream& out, const std::vector<IterTrace>& trace, bool include_timing) {
  out << "n,residual,objective,v_displacement" << (include_timing ? ",wall_ms\n" : "\n");
  for (const IterTrace& row : trace) {
    out << row.n << ',' << fmt_real(row.residual) << ',' << (row.objective ? fmt_real(*row.objective) : "") << ','
        << (row.v_displacement ? fmt_real(*row.v_displacement) : "");
    if (include_timing) out << ',' << fmt_real(row.wall_ms);
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "tau,sigma1,sigma2,sigma3,lambda,seed,iterations,converged,final_residual,objective,psnr,wall_ms\n";
  for (const SweepRow& r : rows) {
    const StepSizes& s = r.cell.steps;
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", fmt_real(s.tau), fmt_real(s.sigma1),
                       fmt_real(s.sigma2), fmt_real(s.sigma3), fmt_real(r.cell.lambda), r.seed, r.iterations,
                       r.converged ? "true" : "false", fmt_real(r.final_residual), fmt_real(r.objective),
                       fmt_real(r.psnr), fmt_real(r.wall_ms));
  }
}

}  // namespace critpd::tv
