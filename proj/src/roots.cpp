#include "rayleigh/roots.hpp"

#include <cmath>
#include <sstream>

#include "rayleigh/error.hpp"
#include "rayleigh/parallel.hpp"
#include "rayleigh/secular.hpp"

namespace rayleigh {

namespace {

struct Refined {
  double root;
  double residual;
  double lo;
  double hi;
  int iterations;
};

template <class F>
Refined bisect(F&& f, double lo, double hi, double flo, double tol, double speed_scale) {
  int it = 0;
  double mid = 0.5 * (lo + hi);
  double fmid = f(mid);
  while (true) {
    const bool narrow = (hi - lo) <= tol * speed_scale;
    if ((narrow && std::abs(fmid) <= tol) || fmid == 0.0) {
      break;
    }
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    ++it;
    if (next <= lo || next >= hi) {
      break;  // floating-point resolution exhausted
    }
    mid = next;
    fmid = f(mid);
  }
  return {mid, std::abs(fmid), lo, hi, it};
}

}  // namespace

RootReport find_subsonic_root(double z1, double z2, const Material& mat, const RootOptions& opts) {
  if (!(opts.tol > 0.0)) {
    throw InvalidArgument("root tolerance must be positive");
  }
  if (opts.samples < 2) {
    throw InvalidArgument("root search needs at least 2 samples");
  }
  const double c2 = mat.c2();
  const auto f = [&](double c) { return secular_impedance(cplx(c, 0.0), z1, z2, mat).value.real(); };

  const std::size_t n = opts.samples;
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = c2 * static_cast<double>(i + 1) / static_cast<double>(n + 1);
    fs[i] = f(xs[i]);
  }

  RootReport report;
  std::vector<Refined> refined;
  std::size_t tangential = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (fs[i] == 0.0) {
      refined.push_back({xs[i], 0.0, xs[i], xs[i], 0});
      continue;
    }
    if ((fs[i] < 0.0) != (fs[i + 1] < 0.0) && fs[i + 1] != 0.0) {
      refined.push_back(bisect(f, xs[i], xs[i + 1], fs[i], opts.tol, c2));
      ++report.sign_changes;
    } else if (i > 0 && std::abs(fs[i]) < opts.tol && (fs[i - 1] < 0.0) == (fs[i] < 0.0) &&
               std::abs(fs[i]) <= std::abs(fs[i - 1]) && std::abs(fs[i]) <= std::abs(fs[i + 1])) {
      // Local minimum of |f| that touches zero without crossing: tangential
      // candidate. The minimum test keeps the trivial zero at c = 0 out.
      refined.push_back({xs[i], std::abs(fs[i]), xs[i], xs[i], 0});
      ++tangential;
    }
  }
  if (fs[n - 1] == 0.0) {
    refined.push_back({xs[n - 1], 0.0, xs[n - 1], xs[n - 1], 0});
  }

  if (refined.empty()) {
    return report;
  }
  const Refined& first = refined.front();
  report.found = true;
  report.c_root = first.root;
  report.residual = first.residual;
  report.bracket = {first.lo, first.hi};
  report.iterations = first.iterations;
  for (const auto& r : refined) {
    report.roots.push_back(r.root);
  }
  if (refined.size() > 1 || tangential > 0) {
    std::ostringstream os;
    os << refined.size() << " root candidates (" << report.sign_changes << " sign changes, " << tangential
       << " tangential)";
    report.multiplicity_note = os.str();
  }
  return report;
}

std::vector<ExistenceCell> existence_map(const std::vector<double>& z1s, const std::vector<double>& z2s,
                                         const Material& mat, const RootOptions& opts, unsigned threads) {
  if (z1s.empty() || z2s.empty()) {
    throw InvalidArgument("existence map grids must be nonempty");
  }
  std::vector<ExistenceCell> cells(z1s.size() * z2s.size());
  parallel_for(cells.size(), threads, [&](std::size_t idx) {
    const std::size_t j = idx / z1s.size();
    const std::size_t i = idx % z1s.size();
    ExistenceCell& cell = cells[idx];
    cell.z1 = z1s[i];
    cell.z2 = z2s[j];
    try {
      cell.report = find_subsonic_root(cell.z1, cell.z2, mat, opts);
    } catch (const Error& e) {
      cell.report = RootReport{};
      cell.report.multiplicity_note = std::string("error: ") + e.what();
    }
  });
  return cells;
}

}  // namespace rayleigh
