#include <stdexcept>
#include <string>

#include "cbp/adversaries.hpp"

namespace cbp {

namespace {

Rational power(const Rational& base, std::int64_t exponent) {
  Rational out = 1;
  for (std::int64_t e = 0; e < exponent; ++e) out *= base;
  return out;
}

std::int64_t to_count(const Rational& value, const char* what) {
  if (value.get_den() != 1) {
    throw std::invalid_argument(std::string(what) + " count " + value.get_str() + " is not an integer");
  }
  return value.get_num().get_si();
}

std::int64_t cascade_m(std::int64_t N) {
  if (N < 2 || N > kMaxCascadeN) {
    throw std::invalid_argument("cascade requires 2 <= N <= " + std::to_string(kMaxCascadeN));
  }
  std::int64_t M = 1;
  for (std::int64_t e = 0; e <= N; ++e) M *= 4;
  return M;
}

void check_eps(const Rational& eps, std::int64_t M) {
  if (sgn(eps) <= 0 || eps * 8 * M >= 1) {
    throw std::invalid_argument("eps must satisfy 0 < eps < 1/(8M), got " + eps.get_str());
  }
}

}  // namespace

GeneratedInstance gen_prop1(Prop1Variant variant, std::int64_t M, std::int64_t N) {
  if (M < 4 || N < 2) throw std::invalid_argument("prop1 requires M >= 4 and N >= 2");
  const Rational eps(1, N * N * M * M);
  const Rational delta = eps * eps;
  const bool wf = variant == Prop1Variant::wf;

  GeneratedInstance out;
  out.family = wf ? "prop1-wf" : "prop1-eps";
  out.certificate.assign(static_cast<std::size_t>(M), {});
  for (std::int64_t phase = 0; phase < N; ++phase) {
    for (std::int64_t w = 0; w < M; ++w) {
      const Rational& size = wf && w == 0 ? delta : eps;
      out.certificate[w].push_back(out.instance.add(colors::white, Size(size)).index);
    }
    for (std::int64_t t = 0; t < M; ++t) {
      const Rational& size = wf ? delta : eps;
      out.certificate[t].push_back(out.instance.add(colors::red, Size(size)).index);
      out.certificate[t].push_back(out.instance.add(colors::blue, Size(size)).index);
    }
  }
  out.certificate_bins = static_cast<std::size_t>(M);
  return out;
}

Rational cascade_factor(std::int64_t i) {
  if (i < 1) throw std::invalid_argument("cascade factor index starts at 1");
  return 2 - power(Rational(3, 4), i - 1);
}

GeneratedInstance gen_bap_zero_cascade(std::int64_t M, std::int64_t phases) {
  if (M < 1 || phases < 0) throw std::invalid_argument("cascade requires M >= 1 and phases >= 0");
  GeneratedInstance out;
  out.family = "bap-zero";
  out.certificate.assign(static_cast<std::size_t>(M), {});
  for (std::int64_t b = 0; b < M; ++b) {
    out.certificate[b].push_back(out.instance.add(colors::white, Size::zero()).index);
  }
  for (std::int64_t i = 1; i <= phases; ++i) {
    const Rational a = cascade_factor(i);
    const std::int64_t reds = to_count(a * M / 2, "red");
    const std::int64_t blues = to_count((1 - a / 2) * M, "blue");
    // One red-or-blue item per certificate bin, then one white item per bin.
    for (std::int64_t t = 0; t < reds + blues; ++t) {
      const Color& color = t < reds ? colors::red : colors::blue;
      out.certificate[t].push_back(out.instance.add(color, Size::zero()).index);
    }
    for (std::int64_t b = 0; b < M; ++b) {
      out.certificate[b].push_back(out.instance.add(colors::white, Size::zero()).index);
    }
  }
  out.certificate_bins = static_cast<std::size_t>(M);
  return out;
}

GeneratedInstance gen_bap_zero(std::int64_t N) { return gen_bap_zero_cascade(cascade_m(N), N); }

Rational default_cascade_eps(std::int64_t N) { return Rational(1, 16 * cascade_m(N)); }

GeneratedInstance gen_bap_general(std::int64_t N, const Rational& eps) {
  const std::int64_t M = cascade_m(N);
  check_eps(eps, M);
  GeneratedInstance out = gen_bap_zero(N);
  out.family = "bap-general";
  const std::int64_t m = to_count(power(Rational(3, 4), N) * M, "m");
  const Size small(2 * eps);
  const Size large(1 - eps);

  std::int64_t fresh = 0;
  auto fresh_color = [&fresh] { return Color("fresh-" + std::to_string(++fresh)); };

  // The certificate stacks every small item into bin 0 and gives each large
  // black item its own white-topped bin.
  for (std::int64_t t = 0; t < 2 * M - m - 1; ++t) {
    out.certificate[0].push_back(out.instance.add(fresh_color(), small).index);
  }
  for (std::int64_t t = 1; t < M; ++t) {
    out.certificate[t].push_back(out.instance.add(colors::black, large).index);
  }
  for (std::int64_t t = 0; t < M - 2; ++t) {
    out.certificate[0].push_back(out.instance.add(fresh_color(), small).index);
  }
  out.certificate_bins = static_cast<std::size_t>(M);
  return out;
}

GeneratedInstance gen_bap_3color(std::int64_t N, const Rational& eps) {
  const std::int64_t M = cascade_m(N);
  check_eps(eps, M);
  GeneratedInstance out = gen_bap_zero(N);
  out.family = "bap-3color";

  std::vector<Rational> delta(static_cast<std::size_t>(M) + 2);
  delta[0] = eps;
  for (std::size_t t = 1; t < delta.size(); ++t) delta[t] = delta[t - 1] / 4;

  const std::size_t base = out.instance.size();
  for (std::int64_t t = 1; t <= M; ++t) out.instance.add(colors::blue, Size(delta[t]));
  for (std::int64_t t = 1; t <= M; ++t) out.instance.add(colors::white, Size(1 - 3 * delta[t + 1]));
  for (std::int64_t t = 1; t <= M; ++t) out.instance.add(colors::blue, Size(delta[t]));
  auto first_blue = [&](std::int64_t t) { return base + static_cast<std::size_t>(t); };
  auto white = [&](std::int64_t t) { return base + static_cast<std::size_t>(M + t); };
  auto second_blue = [&](std::int64_t t) { return base + static_cast<std::size_t>(2 * M + t); };

  // The white item of size 1 - 3 delta_t is white(t-1), so bins group
  // delta_t + (1 - 3 delta_t) + delta_t = 1 - delta_t for t = 2..M.
  for (std::int64_t t = 2; t <= M; ++t) {
    auto& bin = out.certificate[t - 2];
    bin.push_back(first_blue(t));
    bin.push_back(white(t - 1));
    bin.push_back(second_blue(t));
  }
  out.certificate[M - 1].push_back(first_blue(1));
  out.certificate.push_back({white(M)});
  out.certificate.push_back({second_blue(1)});
  out.certificate_bins = static_cast<std::size_t>(M) + 2;
  return out;
}

}  // namespace cbp
