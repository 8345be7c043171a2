#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>

#include "kantorovich/kernel.hpp"

namespace kantorovich {

struct MomentOptions {
  SupGrid grid;
  double tail_tolerance = kCertifiedTailTolerance;
};

// m_nu(phi, u) = sum_k phi(u-k) (k-u)^nu over the certified truncation window.
double algebraic_moment(const Kernel& kernel, int nu, double u, double tail_tolerance = kCertifiedTailTolerance);

// M_nu(phi) = sup_u sum_k |phi(u-k)| |k-u|^nu, estimated on the periodic u-grid.
// The returned value includes the analytic tail bound for decay kernels.
double absolute_moment(const Kernel& kernel, int nu, const MomentOptions& options = {});

// M_beta(phi) for 0 < beta < 1.
double fractional_moment(const Kernel& kernel, double beta, const MomentOptions& options = {});

struct MomentTable {
  std::string kernel_name;
  double m0_defect = 0.0;  // sup_u |m_0(phi,u) - 1|
  double m1_defect = 0.0;  // sup_u |m_1(phi,u)|
  double M0 = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  std::optional<FractionalEstimate> fractional;
  double truncation_radius = 0.0;
  double tail_bound = 0.0;
  double sup_norm = 0.0;
  SupGrid grid;

  bool certified() const noexcept { return tail_bound < 1e-6; }
};

MomentTable moment_table(const Kernel& kernel, std::optional<double> beta = std::nullopt,
                         const MomentOptions& options = {});

// Process-wide insert-once cache of moment tables keyed by kernel spec, beta and grid.
class MomentCache {
 public:
  static MomentCache& global();

  MomentTable get(const Kernel& kernel, std::optional<double> beta = std::nullopt,
                  const MomentOptions& options = {});

 private:
  using Key = std::tuple<std::string, double, int, int, double>;
  std::mutex mutex_;
  std::map<Key, std::shared_ptr<const MomentTable>> tables_;
};

}  // namespace kantorovich
