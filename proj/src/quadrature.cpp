#include "ominc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "ominc/errors.hpp"

namespace ominc {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (standard QUADPACK
// dqk15 constants).  Nodes are symmetric about 0; index 7 is the center.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.2293532201052922e-1, 0.6309209262997855e-1, 0.1047900103222502,
    0.1406532597155259,    0.1690047266392679,    0.1903505780647854,
    0.2044329400752989,    0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
  double a, b;
  double integral;
  double error;
};

// One K15 application on [a, b] with the QUADPACK error heuristic.
Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    resk += kWgk[j] * (fv1[j] + fv2[j]);
    if (j % 2 == 1) resg += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] *
              (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return Panel{a, b, resk * half, err};
}

struct WorseError {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.error != q.error) return p.error < q.error; // max-heap on error
    return p.a > q.a; // deterministic tie-break: leftmost panel first
  }
};

} // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, std::vector<double> breaks,
                              const QuadratureSpec& spec) {
  if (breaks.size() < 2 || breaks.front() != a || breaks.back() != b)
    throw ConfigError("quadrature", "break list must span [a, b]");
  std::priority_queue<Panel, std::vector<Panel>, WorseError> heap;
  QuadResult out;
  double total = 0.0, toterr = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Panel p = gk15(f, breaks[i], breaks[i + 1]);
    out.evaluations += 15;
    total += p.integral;
    toterr += p.error;
    heap.push(p);
  }
  out.subdivisions = static_cast<int>(breaks.size()) - 1;
  while (toterr > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (out.subdivisions >= spec.max_subdivisions)
      throw QuadratureError("adaptive integration exhausted " +
                                std::to_string(spec.max_subdivisions) +
                                " subdivisions",
                            total, toterr, out.evaluations);
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw QuadratureError("panel collapsed to machine precision without "
                            "meeting tolerance",
                            total, toterr, out.evaluations);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    ++out.subdivisions;
    total += left.integral + right.integral - worst.integral;
    toterr += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  out.value = total;
  out.error = toterr;
  return out;
}

QuadResult integrate_half_line(const std::function<double(double)>& f,
                               double scale,
                               const std::vector<double>& nu_breaks,
                               const QuadratureSpec& spec) {
  if (!(scale > 0.0))
    throw ConfigError("quadrature", "half-line scale must be positive");
  const auto to_t = [scale](double nu) { return nu / (scale + nu); };
  std::vector<double> breaks{0.0};
  for (double nu : nu_breaks)
    if (nu > 0.0 && std::isfinite(nu)) breaks.push_back(to_t(nu));
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto g = [&f, scale](double t) {
    const double om = 1.0 - t;
    const double nu = scale * t / om;
    return f(nu) * scale / (om * om); // dnu = scale/(1-t)^2 dt
  };
  return integrate_adaptive(g, 0.0, 1.0, std::move(breaks), spec);
}

} // namespace ominc
