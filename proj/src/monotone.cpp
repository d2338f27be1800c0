#include "critpd/monotone.hpp"

#include "critpd/errors.hpp"

#include <fmt/format.h>

namespace critpd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

MonotoneOp::MonotoneOp(Index dim, Family family, std::string descriptor, Payload payload)
    : dim_(dim), family_(family), descriptor_(std::move(descriptor)), payload_(std::move(payload)) {
  if (dim_ <= 0) throw DimensionError("MonotoneOp: dimension must be positive");
}

MonotoneOp MonotoneOp::zero(Index dim) { return MonotoneOp(dim, Family::zero, "zero", Zero{}); }

MonotoneOp MonotoneOp::affine(double slope, HVector offset) {
  if (!(slope >= 0.0)) throw DomainError(fmt::format("affine operator: slope {} must be nonnegative", slope));
  const Index n = offset.size();
  return MonotoneOp(n, Family::affine, fmt::format("affine(slope={})", slope),
                    Affine{slope, std::move(offset)});
}

MonotoneOp MonotoneOp::l1_subdifferential(Index dim, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError(fmt::format("l1 operator: alpha {} must be nonnegative", alpha));
  return MonotoneOp(dim, Family::l1, fmt::format("l1(alpha={})", alpha), L1{alpha});
}

MonotoneOp MonotoneOp::box_normal_cone(Index dim, double lo, double hi) {
  if (!(lo <= hi)) throw DomainError(fmt::format("box operator: lo {} exceeds hi {}", lo, hi));
  return MonotoneOp(dim, Family::box, fmt::format("box([{}, {}])", lo, hi), Box{lo, hi});
}

MonotoneOp MonotoneOp::quadratic_data_fit(std::shared_ptr<const QuadDataFit> fit) {
  if (!fit) throw DomainError("quadratic operator: null data fit");
  const Index n = fit->dim();
  std::string name = fit->uses_fft() ? "quadratic(fft)" : "quadratic(dense)";
  return MonotoneOp(n, Family::quadratic, std::move(name), Quadratic{std::move(fit)});
}

MonotoneOp MonotoneOp::subdifferential(Index dim, ProxFn prox_g, std::string name) {
  if (!prox_g) throw DomainError("subdifferential operator: null prox");
  return MonotoneOp(dim, Family::prox, std::move(name), Prox{std::move(prox_g)});
}

HVector MonotoneOp::resolvent(const Precond& upsilon, const HVector& x) const {
  if (x.size() != dim_ || upsilon.dim() != dim_) {
    throw DimensionError(fmt::format("{}: resolvent input does not match dimension {}", descriptor_, dim_));
  }
  const bool is_dense = upsilon.kind() == Precond::Kind::dense;
  auto unsupported = [&] {
    return UnsupportedResolventError(
        fmt::format("{}: no resolvent formula for a dense preconditioner", descriptor_));
  };

  return std::visit(
      overloaded{
          [&](const Zero&) { return x; },
          [&](const Affine& a) -> HVector {
            // y + Upsilon (s y - c) = x
            if (!is_dense) {
              const Eigen::VectorXd d = upsilon.diagonal_entries();
              Eigen::VectorXd y = (x.values() + d.cwiseProduct(a.offset.values())).array() /
                                  (1.0 + a.slope * d.array());
              return HVector(std::move(y), x.dims());
            }
            const Eigen::MatrixXd u = upsilon.to_dense();
            Eigen::MatrixXd system = Eigen::MatrixXd::Identity(dim_, dim_) + a.slope * u;
            Eigen::VectorXd rhs = x.values() + u * a.offset.values();
            return HVector(Eigen::VectorXd(system.llt().solve(rhs)), x.dims());
          },
          [&](const L1& l) -> HVector {
            if (is_dense) throw unsupported();
            if (upsilon.kind() == Precond::Kind::scalar) return prox_l1(x, l.alpha * upsilon.scalar_value());
            const Eigen::VectorXd thresholds = l.alpha * upsilon.diagonal_entries();
            HVector out = x;
            auto& v = out.values();
            v = v.array().sign() * (v.array().abs() - thresholds.array()).max(0.0);
            return out;
          },
          [&](const Box& b) -> HVector {
            // The box is separable, so the projection is the same in any diagonal metric.
            if (is_dense) throw unsupported();
            return project_box(x, b.lo, b.hi);
          },
          [&](const Quadratic& q) -> HVector { return q.fit->resolvent(upsilon, x); },
          [&](const Prox& p) -> HVector {
            if (upsilon.kind() != Precond::Kind::scalar) {
              throw UnsupportedResolventError(
                  fmt::format("{}: prox-defined operators need a scalar preconditioner", descriptor_));
            }
            return p.prox(upsilon.scalar_value(), x);
          },
      },
      payload_);
}

ProxFn MonotoneOp::scalar_resolvent() const {
  auto self = *this;
  return [self](double kappa, const HVector& v) { return self.resolvent(Precond::scalar(self.dim(), kappa), v); };
}

HVector resolvent_generic(const MonotoneOp& op, const Precond& upsilon, const HVector& x) {
  return op.resolvent(upsilon, x);
}

HVector resolvent_inverse(const MonotoneOp& b, const Precond& sigma, const HVector& w) {
  if (sigma.kind() == Precond::Kind::scalar) {
    return moreau_inverse_resolvent(b.scalar_resolvent(), sigma.scalar_value(), w);
  }
  return w - sigma.apply(b.resolvent(sigma.inverse(), sigma.apply_inverse(w)));
}

}  // namespace critpd
