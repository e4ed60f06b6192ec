#include "anholkit/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace anholkit {

namespace {

void enumerate_degree(int nvars, int degree, int var, std::vector<int>& cur, std::vector<int>& out) {
  if (var == nvars - 1) {
    cur[static_cast<std::size_t>(var)] = degree;
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[static_cast<std::size_t>(var)] = k;
    enumerate_degree(nvars, degree - k, var + 1, cur, out);
  }
}

}  // namespace

JetLayout::JetLayout(int nvars, int max_order) : nvars_(nvars), max_order_(max_order) {
  const auto d = static_cast<std::size_t>(nvars);
  std::vector<int> cur(d, 0);
  for (int k = 0; k <= max_order; ++k) {
    enumerate_degree(nvars, k, 0, cur, indices_);
    counts_.push_back(indices_.size() / d);
  }
  const std::size_t total = counts_.back();
  degrees_.resize(total);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> kr(total);
  for (std::size_t r = 0; r < total; ++r) {
    auto a = index(r);
    degrees_[r] = std::accumulate(a.begin(), a.end(), 0);
    kr[r] = {key(a), static_cast<std::uint32_t>(r)};
  }
  std::sort(kr.begin(), kr.end());
  for (const auto& [k, r] : kr) {
    keys_.push_back(k);
    key_rank_.push_back(r);
  }

  std::vector<int> sum(d);
  for (std::size_t a = 0; a < total; ++a) {
    const std::size_t bend = counts_[static_cast<std::size_t>(max_order - degrees_[a])];
    for (std::size_t b = 0; b < bend; ++b) {
      auto ia = index(a);
      auto ib = index(b);
      for (std::size_t v = 0; v < d; ++v) sum[v] = ia[v] + ib[v];
      terms_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                        static_cast<std::uint32_t>(rank(sum))});
    }
  }
  std::stable_sort(terms_.begin(), terms_.end(), [this](const Term& x, const Term& y) {
    return degrees_[x.r] < degrees_[y.r];
  });
  term_ends_.assign(static_cast<std::size_t>(max_order) + 1, 0);
  for (int k = 0; k <= max_order; ++k) {
    term_ends_[static_cast<std::size_t>(k)] = static_cast<std::size_t>(
        std::partition_point(terms_.begin(), terms_.end(), [&](const Term& t) { return degrees_[t.r] <= k; }) -
        terms_.begin());
  }

  if (max_order > 0) {
    const std::size_t lower = counts_[static_cast<std::size_t>(max_order - 1)];
    shift_.resize(d * lower);
    for (std::size_t v = 0; v < d; ++v) {
      for (std::size_t r = 0; r < lower; ++r) {
        auto a = index(r);
        std::copy(a.begin(), a.end(), sum.begin());
        sum[v] += 1;
        shift_[v * lower + r] = static_cast<std::uint32_t>(rank(sum));
      }
    }
  }
}

std::uint64_t JetLayout::key(std::span<const int> alpha) const {
  std::uint64_t k = 0;
  for (int v = nvars_ - 1; v >= 0; --v) k = k * static_cast<std::uint64_t>(max_order_ + 1) + static_cast<std::uint64_t>(alpha[static_cast<std::size_t>(v)]);
  return k;
}

std::size_t JetLayout::rank(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_) fail(ErrorKind::dimension_mismatch, "multi-index length");
  int deg = 0;
  for (int a : alpha) {
    if (a < 0) fail(ErrorKind::invalid_argument, "negative multi-index entry");
    deg += a;
  }
  if (deg > max_order_) fail(ErrorKind::order_exceeded, "multi-index order exceeds the layout cap");
  auto k = key(alpha);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  return key_rank_[static_cast<std::size_t>(it - keys_.begin())];
}

const JetLayout& JetLayout::get(int nvars, int max_order) {
  if (nvars < 1) fail(ErrorKind::dimension_mismatch, "jet needs at least one variable");
  if (max_order < 0 || max_order > kMaxJetOrder)
    fail(ErrorKind::order_exceeded, "jet order must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> registry;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = registry[{nvars, max_order}];
  if (!slot) slot.reset(new JetLayout(nvars, max_order));
  return *slot;
}

Jet::Jet(const JetLayout& layout, int order, double value) : layout_(&layout), order_(order) {
  if (order < 0 || order > layout.max_order()) fail(ErrorKind::order_exceeded, "jet order outside layout range");
  c_.assign(layout.count(order), 0.0);
  c_[0] = value;
}

Jet Jet::variable(const JetLayout& layout, int order, int var, double value) {
  Jet j(layout, order, value);
  if (order >= 1) j.c_[static_cast<std::size_t>(1 + var)] = 1.0;
  return j;
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  Jet j = *this;
  j.order_ = order;
  j.c_.resize(layout_->count(order));
  return j;
}

Jet Jet::derivative(int v) const {
  if (order_ < 1) fail(ErrorKind::order_exceeded, "cannot differentiate an order-0 jet");
  Jet out(*layout_, order_ - 1, 0.0);
  auto src = layout_->shift(v);
  for (std::size_t r = 0; r < out.c_.size(); ++r) {
    out.c_[r] = static_cast<double>(layout_->index(r)[static_cast<std::size_t>(v)] + 1) * c_[src[r]];
  }
  return out;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

namespace {

void same_layout(const Jet& a, const Jet& b) {
  if (&a.layout() != &b.layout()) fail(ErrorKind::dimension_mismatch, "jets from different layouts");
}

}  // namespace

Jet& Jet::operator+=(const Jet& o) {
  same_layout(*this, o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t r = 0; r < c_.size(); ++r) c_[r] += o.c_[r];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  same_layout(*this, o);
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t r = 0; r < c_.size(); ++r) c_[r] -= o.c_[r];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a.order() <= b.order() ? a : a.truncated(b.order());
  r += b;
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a.order() <= b.order() ? a : a.truncated(b.order());
  r -= b;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  same_layout(a, b);
  const int k = std::min(a.order(), b.order());
  Jet r(a.layout(), k, 0.0);
  const double* x = a.c_.data();
  const double* y = b.c_.data();
  double* z = r.c_.data();
  for (const auto& t : a.layout().products(k)) z[t.r] += x[t.a] * y[t.b];
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.c_[0] += s;
  return r;
}

Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r.c_[0] += s;
  return r;
}

Jet operator*(const Jet& a, double s) {
  Jet r = a;
  r *= s;
  return r;
}

Jet compose(const Jet& a, std::span<const double> taylor) {
  const int k = a.order();
  Jet h = a;
  h.c_[0] = 0.0;
  Jet res(a.layout(), k, taylor[static_cast<std::size_t>(k)]);
  for (int i = k - 1; i >= 0; --i) {
    res = res * h;
    res.c_[0] += taylor[static_cast<std::size_t>(i)];
  }
  return res;
}

Jet reciprocal(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0) fail(ErrorKind::domain, "division by a jet with zero value");
  std::vector<double> t(static_cast<std::size_t>(a.order()) + 1);
  double p = 1.0 / a0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= a0;
  }
  return compose(a, t);
}

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (a0 < 0.0 || (a0 == 0.0 && a.order() > 0)) fail(ErrorKind::domain, "sqrt outside its smooth domain");
  std::vector<double> t(static_cast<std::size_t>(a.order()) + 1);
  double binom = 1.0;
  const double s = std::sqrt(a0);
  double p = s;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = binom * p;
    binom *= (0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
    p /= a0;
  }
  return compose(a, t);
}

Jet pow(const Jet& a, double e) {
  const double a0 = a.value();
  if (a0 <= 0.0) fail(ErrorKind::domain, "real power of a non-positive jet");
  std::vector<double> t(static_cast<std::size_t>(a.order()) + 1);
  double binom = 1.0;
  double p = std::pow(a0, e);
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = binom * p;
    binom *= (e - static_cast<double>(k)) / static_cast<double>(k + 1);
    p /= a0;
  }
  return compose(a, t);
}

Jet exp(const Jet& a) {
  std::vector<double> t(static_cast<std::size_t>(a.order()) + 1);
  double v = std::exp(a.value());
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = v;
    v /= static_cast<double>(k + 1);
  }
  return compose(a, t);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (a0 <= 0.0) fail(ErrorKind::domain, "log of a non-positive jet");
  std::vector<double> t(static_cast<std::size_t>(a.order()) + 1);
  t[0] = std::log(a0);
  double p = 1.0 / a0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    t[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / static_cast<double>(k);
    p /= a0;
  }
  return compose(a, t);
}

namespace {

// Taylor coefficients of sin (phase 0) or cos (phase 1) at a0.
std::vector<double> trig_series(double a0, int order, int phase) {
  const double s = std::sin(a0), c = std::cos(a0);
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(static_cast<std::size_t>(order) + 1);
  double fact = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    t[k] = cycle[(k + static_cast<std::size_t>(phase)) % 4] / fact;
  }
  return t;
}

}  // namespace

Jet sin(const Jet& a) { return compose(a, trig_series(a.value(), a.order(), 0)); }
Jet cos(const Jet& a) { return compose(a, trig_series(a.value(), a.order(), 1)); }

Jet tan(const Jet& a) {
  if (std::cos(a.value()) == 0.0) fail(ErrorKind::domain, "tan at a pole");
  return sin(a) / cos(a);
}

Jet abs(const Jet& a) {
  if (a.value() == 0.0 && a.order() > 0) fail(ErrorKind::domain, "abs is not differentiable at 0");
  return a.value() < 0.0 ? -a : a;
}

double extract_partial(const Jet& j, std::span<const int> alpha) {
  int deg = 0;
  double fact = 1.0;
  for (int a : alpha) {
    deg += a;
    for (int k = 2; k <= a; ++k) fact *= k;
  }
  if (deg > j.order()) fail(ErrorKind::order_exceeded, "partial order exceeds jet order");
  return fact * j.coeff(j.layout().rank(alpha));
}

double extract_partial(const Jet& j, std::initializer_list<int> alpha) {
  return extract_partial(j, std::span<const int>(alpha.begin(), alpha.size()));
}

std::vector<Jet> seed(std::span<const double> point, int order) {
  const auto& layout = JetLayout::get(static_cast<int>(point.size()), kMaxJetOrder);
  std::vector<Jet> vars;
  vars.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i)
    vars.push_back(Jet::variable(layout, order, static_cast<int>(i), point[i]));
  return vars;
}

}  // namespace anholkit
