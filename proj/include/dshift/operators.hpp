#pragma once

#include <optional>
#include <vector>

#include "dshift/haar.hpp"
#include "dshift/kernel.hpp"
#include "dshift/weight_function.hpp"

namespace dshift {

enum class OperatorPath { spectral, quadrature };

struct OperatorResult {
  GridFunction output;
  OperatorPath path;
  std::optional<TruncationWindow> window;
};

/// Sum of c_I (h_{I-} - h_{I+}) over the spectrum of f up to scale 2^scale_cap.
/// Output lives on [0, 2^scale_cap) at resolution N+1.
OperatorResult apply_shift_spectral(const GridFunction& f, std::int64_t scale_cap);

/// The same sum restricted to 2^l <= |I| < 2^m. Output support is
/// max(M, m-1); throws ResolutionError when l < -N+1.
OperatorResult apply_scale_truncated(const GridFunction& f, const TruncationWindow& w);

/// Integral of P_{l,m}(x,y) f(y) dy, by exact ring-by-ring quadrature.
///
/// Output support is max(M, m-1) and resolution max(N+1, 2-l); both kernels
/// are constant in x on output cells and constant in y on each ring around x.
OperatorResult apply_metric_truncated(const GridFunction& f, const TruncationWindow& w);

/// Integral of Q_{l,m}(x,y) f(y) dy on the same grid as apply_metric_truncated.
OperatorResult apply_Q(const GridFunction& f, const TruncationWindow& w);

/// sup over all l < m of |P^{l,m} f(x)|, exact.
ExactReal maximal_scale(const GridFunction& f, const DyadicRational& x);

/// sup over all l < m of |P_{l,m} f(x)|, exact.
ExactReal maximal_metric(const GridFunction& f, const DyadicRational& x);

/// sup over dyadic I containing x of the average of |f| on I.
ExactReal maximal_dyadic(const GridFunction& f, const DyadicRational& x);

enum class MaximalKind { scale, metric, dyadic };

const char* maximal_name(MaximalKind kind);

/// One maximal operator at many points; parallel over points.
std::vector<ExactReal> maximal_at(const GridFunction& f, MaximalKind kind,
                                  const std::vector<DyadicRational>& points);

/// Left endpoints of the cells of [0, 2^support_level) at `resolution_level`.
std::vector<DyadicRational> cell_points(int support_level, int resolution_level);

/// (sum over cells of |f|^p w(C))^(1/p) in floating point; Lebesgue when w is null.
double lp_norm(const GridFunction& f, double p, const WeightFunction* w = nullptr);

}  // namespace dshift
