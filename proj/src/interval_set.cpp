#include "dshell/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dshell {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Interval canonical(Interval iv) {
  if (std::isinf(iv.lo)) iv.lo_closed = false;
  if (std::isinf(iv.hi)) iv.hi_closed = false;
  return iv;
}
}  // namespace

bool Interval::contains(double x) const {
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Interval::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed);
  return false;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

IntervalSet IntervalSet::free_spectrum(double mass) {
  const double a = std::abs(mass);
  return IntervalSet({{-kInf, -a, false, true}, {a, kInf, true, false}});
}

IntervalSet IntervalSet::real_line() { return IntervalSet({{-kInf, kInf, false, false}}); }

void IntervalSet::add(Interval iv) { parts_.push_back(canonical(iv)); }

void IntervalSet::normalize() {
  std::vector<Interval> v;
  for (const auto& p : parts_)
    if (!p.empty()) v.push_back(canonical(p));
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (const auto& p : v) {
    if (!out.empty()) {
      Interval& q = out.back();
      const bool touches = p.lo < q.hi || (p.lo == q.hi && (p.lo_closed || q.hi_closed));
      if (touches) {
        if (p.hi > q.hi) {
          q.hi = p.hi;
          q.hi_closed = p.hi_closed;
        } else if (p.hi == q.hi) {
          q.hi_closed = q.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(p);
  }
  parts_ = std::move(out);
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& p) { return p.contains(x); });
}

bool IntervalSet::closure_contains(double x, double tol) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [x, tol](const Interval& p) { return x >= p.lo - tol && x <= p.hi + tol; });
}

bool IntervalSet::is_real_line() const {
  return parts_.size() == 1 && std::isinf(parts_[0].lo) && parts_[0].lo < 0 && std::isinf(parts_[0].hi) &&
         parts_[0].hi > 0;
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& p = parts_[i];
    if (i) os << " u ";
    os << (p.lo_closed ? '[' : '(') << p.lo << ", " << p.hi << (p.hi_closed ? ']' : ')');
  }
  return os.str();
}

}  // namespace dshell
