#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "bfdr/numkernel.hpp"
#include "bfdr/parallel.hpp"

namespace bfdr::par {

void set_workers(int workers) {
  if (workers > 0) {
    omp_set_num_threads(workers);
  } else {
    omp_set_num_threads(omp_get_num_procs());
  }
}

int workers() { return omp_get_max_threads(); }

}  // namespace bfdr::par

namespace bfdr::num {

namespace {

constexpr double kHalfPi = kPi / 2.0;
// Infinite end points are sampled this close to +-pi/2 by riemann_avg.
constexpr double kEdgePull = 1e-9;

// Integrand after the tan() change of variables on (lo, hi).
struct MappedIntegrand {
  const std::function<double(double)>* f;
  double lo = 0.0, hi = 0.0;
  double center = 0.0;
  double scale = 0.0;  // 0: identity map

  double operator()(double u) const {
    if (scale == 0.0) return (*f)(u);
    const double c = std::cos(u);
    const double x = center + scale * std::tan(u);
    return (*f)(x) * scale / (c * c);
  }
};

MappedIntegrand make_map(const std::function<double(double)>& f, double a, double b,
                         double scale) {
  MappedIntegrand m{&f};
  const bool inf_a = std::isinf(a);
  const bool inf_b = std::isinf(b);
  if (!inf_a && !inf_b) {
    m.lo = a;
    m.hi = b;
    return m;
  }
  m.scale = scale;
  if (inf_a && inf_b) {
    m.lo = -kHalfPi;
    m.hi = kHalfPi;
  } else if (inf_b) {
    m.center = a;
    m.lo = 0.0;
    m.hi = kHalfPi;
  } else {
    m.center = b;
    m.lo = -kHalfPi;
    m.hi = 0.0;
  }
  return m;
}

double edge_safe(const MappedIntegrand& g, double u) {
  if (g.scale != 0.0 && std::fabs(std::fabs(u) - kHalfPi) < 1e-15)
    u = std::copysign(kHalfPi * (1.0 - kEdgePull), u);
  return g(u);
}

IntegralValue riemann_avg(const MappedIntegrand& g, const QuadratureConfig& cfg) {
  const int max_level = cfg.max_refinements;
  int level = std::min(4, max_level);
  std::int64_t panels = std::int64_t{1} << level;
  std::vector<double> values(static_cast<std::size_t>(panels) + 1);
  const double width = g.hi - g.lo;
  par::for_each_index(
      panels + 1,
      [&](std::int64_t i) {
        values[static_cast<std::size_t>(i)] =
            edge_safe(g, g.lo + width * static_cast<double>(i) / static_cast<double>(panels));
      },
      cfg.parallel);
  int evaluations = static_cast<int>(panels + 1);

  for (;;) {
    const double h = width / static_cast<double>(panels);
    double lower = 0.0, upper = 0.0;
    for (std::int64_t i = 0; i < panels; ++i) {
      const double l = values[static_cast<std::size_t>(i)];
      const double r = values[static_cast<std::size_t>(i + 1)];
      lower += std::min(l, r);
      upper += std::max(l, r);
    }
    lower *= h;
    upper *= h;
    IntegralValue out{0.5 * (lower + upper), 0.5 * (upper - lower), g.scale, evaluations};
    if (!std::isfinite(out.value))
      throw NonConvergence("integrate: integrand is not finite on the grid", out);
    if (out.error_bound <= cfg.abs_tol) return out;
    if (level >= max_level)
      throw NonConvergence("integrate: riemann_avg did not reach abs_tol", out);

    // Refine: evaluate the new midpoints, then interleave.
    std::vector<double> mids(static_cast<std::size_t>(panels));
    par::for_each_index(
        panels,
        [&](std::int64_t i) {
          mids[static_cast<std::size_t>(i)] =
              g(g.lo + width * (static_cast<double>(i) + 0.5) / static_cast<double>(panels));
        },
        cfg.parallel);
    std::vector<double> next(static_cast<std::size_t>(2 * panels) + 1);
    for (std::int64_t i = 0; i < panels; ++i) {
      next[static_cast<std::size_t>(2 * i)] = values[static_cast<std::size_t>(i)];
      next[static_cast<std::size_t>(2 * i + 1)] = mids[static_cast<std::size_t>(i)];
    }
    next.back() = values.back();
    values.swap(next);
    evaluations += static_cast<int>(panels);
    panels *= 2;
    ++level;
  }
}

// Gauss-Kronrod 7/15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

Segment gk15(const MappedIntegrand& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = g(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double f1 = g(c - dx);
    const double f2 = g(c + dx);
    kron += kWgk[static_cast<std::size_t>(j)] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * (f1 + f2);
  }
  return {a, b, kron * h, std::fabs((kron - gauss) * h)};
}

IntegralValue adaptive(const MappedIntegrand& g, const QuadratureConfig& cfg) {
  constexpr int kInitial = 8;
  const auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::vector<Segment> heap;
  std::vector<Segment> frozen;  // too narrow to split further
  const double width = (g.hi - g.lo) / kInitial;
  for (int i = 0; i < kInitial; ++i) {
    const double a = g.lo + width * i;
    const double b = (i + 1 == kInitial) ? g.hi : g.lo + width * (i + 1);
    heap.push_back(gk15(g, a, b));
  }
  std::make_heap(heap.begin(), heap.end(), worse);
  int evaluations = 15 * kInitial;

  const auto totals = [&]() {
    IntegralValue v{0.0, 0.0, g.scale, evaluations};
    for (const auto& s : heap) {
      v.value += s.value;
      v.error_bound += s.error;
    }
    for (const auto& s : frozen) {
      v.value += s.value;
      v.error_bound += s.error;
    }
    return v;
  };

  int splits = 0;
  for (;;) {
    IntegralValue cur = totals();
    if (!std::isfinite(cur.value))
      throw NonConvergence("integrate: integrand is not finite", cur);
    if (cur.error_bound <= cfg.abs_tol) return cur;
    if (heap.empty() || splits >= cfg.max_subintervals)
      throw NonConvergence("integrate: adaptive quadrature did not reach abs_tol", cur);
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(1.0, std::fabs(mid))) {
      frozen.push_back(worst);
      continue;
    }
    heap.push_back(gk15(g, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(gk15(g, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), worse);
    evaluations += 30;
    ++splits;
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be > 0");
  if (max_refinements < 1)
    throw std::invalid_argument("QuadratureConfig: max_refinements must be >= 1");
  if (max_refinements > 30)
    throw std::invalid_argument("QuadratureConfig: max_refinements must be <= 30");
  if (max_subintervals < 1)
    throw std::invalid_argument("QuadratureConfig: max_subintervals must be >= 1");
  if (!(map_scale > 0.0)) throw std::invalid_argument("QuadratureConfig: map_scale must be > 0");
}

IntegralValue integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integrate: NaN limit");
  if (a == b) return {};
  if (a > b) {
    IntegralValue v = integrate(f, b, a, cfg);
    v.value = -v.value;
    return v;
  }
  if (a == std::numeric_limits<double>::infinity() ||
      b == -std::numeric_limits<double>::infinity())
    return {};
  const MappedIntegrand g = make_map(f, a, b, cfg.map_scale);
  return cfg.scheme == QuadratureScheme::riemann_avg ? riemann_avg(g, cfg) : adaptive(g, cfg);
}

}  // namespace bfdr::num
