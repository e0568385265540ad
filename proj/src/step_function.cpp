#include "ouembed/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ouembed/errors.hpp"

namespace ouembed {

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (values_.empty() || breaks_.size() != values_.size() + 1)
    throw PreconditionError("StepFunction: need N >= 1 values and N+1 breakpoints");
  if (breaks_.front() != 0.0) throw PreconditionError("StepFunction: first breakpoint must be 0");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw PreconditionError("StepFunction: breakpoints must be strictly increasing");
  if (!std::isfinite(breaks_.back())) throw PreconditionError("StepFunction: infinite length");
  for (double v : values_)
    if (!std::isfinite(v)) throw PreconditionError("StepFunction: non-finite value");
}

StepFunction StepFunction::constant(double c, double length) { return StepFunction({0.0, length}, {c}); }

StepFunction StepFunction::indicator(double a, double length) {
  if (!(a > 0.0 && a <= length)) throw DomainError("indicator: a must lie in (0, L]");
  if (a == length) return constant(1.0, length);
  return StepFunction({0.0, a, length}, {1.0, 0.0});
}

StepFunction StepFunction::window(double a, double b, double length) {
  if (!(0.0 <= a && a < b && b <= length)) throw DomainError("window: need 0 <= a < b <= L");
  std::vector<double> br{0.0};
  std::vector<double> v;
  if (a > 0.0) {
    br.push_back(a);
    v.push_back(0.0);
  }
  br.push_back(b);
  v.push_back(1.0);
  if (b < length) {
    br.push_back(length);
    v.push_back(0.0);
  }
  return StepFunction(std::move(br), std::move(v));
}

StepFunction StepFunction::sample(const std::function<double(double)>& f, const std::vector<double>& grid) {
  std::vector<double> v(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) v[i] = f(0.5 * (grid[i] + grid[i + 1]));
  return StepFunction(grid, std::move(v));
}

std::size_t StepFunction::cell_of(double s) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  if (it == breaks_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return std::min(i, values_.size() - 1);
}

double StepFunction::operator()(double s) const { return values_[cell_of(s)]; }

double StepFunction::integral() const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += values_[i] * width(i);
  return total;
}

double StepFunction::integral_to(double s) const {
  if (s <= 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (breaks_[i] >= s) break;
    total += values_[i] * (std::min(s, breaks_[i + 1]) - breaks_[i]);
  }
  return total;
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

bool StepFunction::nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

StepFunction StepFunction::abs() const {
  std::vector<double> v(values_);
  for (double& x : v) x = std::fabs(x);
  return StepFunction(breaks_, std::move(v));
}

StepFunction StepFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return StepFunction(breaks_, std::move(v));
}

StepFunction StepFunction::shifted(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x += c;
  return StepFunction(breaks_, std::move(v));
}

StepFunction StepFunction::reversed() const {
  const double L = length();
  std::vector<double> br(breaks_.size());
  std::vector<double> v(values_.rbegin(), values_.rend());
  br[0] = 0.0;
  for (std::size_t i = 1; i < breaks_.size(); ++i) br[i] = L - breaks_[breaks_.size() - 1 - i];
  br.back() = L;
  return StepFunction(std::move(br), std::move(v));
}

std::vector<double> merge_breaks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StepFunction StepFunction::refined(const std::vector<double>& extra) const {
  std::vector<double> inside;
  for (double x : extra)
    if (x > 0.0 && x < length()) inside.push_back(x);
  std::sort(inside.begin(), inside.end());
  auto br = merge_breaks(breaks_, inside);
  std::vector<double> v(br.size() - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    while (j + 1 < size() && breaks_[j + 1] <= br[i]) ++j;
    v[i] = values_[j];
  }
  return StepFunction(std::move(br), std::move(v));
}

StepFunction StepFunction::compacted() const {
  std::vector<double> br{0.0};
  std::vector<double> v;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!v.empty() && v.back() == values_[i]) {
      br.back() = breaks_[i + 1];
    } else {
      v.push_back(values_[i]);
      br.push_back(breaks_[i + 1]);
    }
  }
  return StepFunction(std::move(br), std::move(v));
}

namespace {

StepFunction combine(const StepFunction& f, const StepFunction& g, double (*op)(double, double)) {
  if (f.length() != g.length()) throw DomainError("step functions on different domains");
  auto br = merge_breaks(f.breaks(), g.breaks());
  std::vector<double> v(br.size() - 1);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double mid = 0.5 * (br[i] + br[i + 1]);
    v[i] = op(f(mid), g(mid));
  }
  return StepFunction(std::move(br), std::move(v));
}

// Cells listed in `order` laid end to end from 0; cells too thin to move the
// running breakpoint in double precision are dropped.
StepFunction lay_out(const StepFunction& f, const std::vector<std::size_t>& order, const std::vector<double>& vals) {
  bool identity = true;
  for (std::size_t k = 0; k < order.size(); ++k) identity = identity && order[k] == k;
  if (identity) return StepFunction(f.breaks(), vals);
  std::vector<double> br{0.0};
  std::vector<double> v;
  double pos = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double next = pos + f.width(order[k]);
    if (!(next > pos)) continue;
    pos = next;
    br.push_back(pos);
    v.push_back(vals[order[k]]);
  }
  br.back() = f.length();
  return StepFunction(std::move(br), std::move(v));
}

StepFunction sort_cells(const StepFunction& f, std::vector<double> vals) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  return lay_out(f, order, vals);
}

}  // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](double a, double b) { return a + b; });
}

StepFunction pointwise_max(const StepFunction& f, const StepFunction& g) {
  return combine(f, g, [](double a, double b) { return std::max(a, b); });
}

std::vector<double> geometric_breaks(double lo, double hi, std::size_t n) {
  std::vector<double> br{0.0};
  const double step = std::log(hi / lo) / static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) br.push_back(lo * std::exp(step * static_cast<double>(k)));
  br.back() = hi;
  return br;
}

std::vector<double> default_grid(std::size_t cells, double smin) {
  if (cells < 4 || cells % 2 != 0) throw DomainError("default_grid: cell count must be even and >= 4");
  if (!(smin > 0.0 && smin < 0.5)) throw DomainError("default_grid: smin must lie in (0,1/2)");
  const auto half = geometric_breaks(smin, 0.5, cells / 2 - 1);
  std::vector<double> br(half);
  for (std::size_t k = half.size() - 1; k-- > 0;) br.push_back(1.0 - half[k]);
  br.back() = 1.0;
  return br;
}

StepFunction decreasing_rearrangement(const StepFunction& f) {
  std::vector<double> vals(f.values());
  for (double& x : vals) x = std::fabs(x);
  return sort_cells(f, std::move(vals));
}

StepFunction signed_rearrangement(const StepFunction& f) { return sort_cells(f, f.values()); }

MaximalFunction::MaximalFunction(const StepFunction& f) : star_(decreasing_rearrangement(f)) {
  prefix_.assign(star_.size() + 1, 0.0);
  for (std::size_t i = 0; i < star_.size(); ++i) prefix_[i + 1] = prefix_[i] + star_.value(i) * star_.width(i);
}

double MaximalFunction::primitive(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= star_.length()) return prefix_.back();
  const std::size_t i = star_.cell_of(s);
  return prefix_[i] + star_.value(i) * (s - star_.left(i));
}

double MaximalFunction::operator()(double s) const {
  if (!(s > 0.0 && s <= star_.length())) throw DomainError("maximal function: s must lie in (0, L]");
  const std::size_t i = star_.cell_of(s);
  if (i == 0) return star_.value(0);
  return primitive(s) / s;
}

MaximalFunction maximal_function(const StepFunction& f) { return MaximalFunction(f); }

double median(const StepFunction& f) { return signed_rearrangement(f)(0.5 * f.length()); }

double mean(const StepFunction& f) { return f.integral() / f.length(); }

double pairing(const StepFunction& f, const StepFunction& g) {
  if (f.length() != g.length()) throw DomainError("pairing: mismatched domain lengths");
  double total = 0.0;
  std::size_t i = 0, j = 0;
  double pos = 0.0;
  while (i < f.size() && j < g.size()) {
    const double end = std::min(f.right(i), g.right(j));
    total += std::fabs(f.value(i) * g.value(j)) * (end - pos);
    pos = end;
    if (f.right(i) == end) ++i;
    if (g.right(j) == end) ++j;
  }
  return total;
}

void write_csv(std::ostream& out, const StepFunction& f) {
  out << "s,value\n";
  char buf[64];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.right(i), f.value(i));
    out << buf;
  }
}

std::string to_csv(const StepFunction& f) {
  std::ostringstream os;
  write_csv(os, f);
  return os.str();
}

StepFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("", 0, "header 's,value'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "s,value") throw ParseError(line, 0, "header 's,value'");
  std::vector<double> br{0.0};
  std::vector<double> v;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(line, line.size(), "',' followed by a value");
    const char* begin = line.c_str();
    char* end = nullptr;
    const double s = std::strtod(begin, &end);
    if (end == begin || static_cast<std::size_t>(end - begin) != comma)
      throw ParseError(line, static_cast<std::size_t>(end - begin), "number before ','");
    const char* vbegin = begin + comma + 1;
    const double x = std::strtod(vbegin, &end);
    if (end == vbegin || *end != '\0')
      throw ParseError(line, static_cast<std::size_t>(end - begin), "number ending the row");
    br.push_back(s);
    v.push_back(x);
  }
  if (v.empty()) throw ParseError("", 0, "at least one row");
  return StepFunction(std::move(br), std::move(v));
}

}  // namespace ouembed
