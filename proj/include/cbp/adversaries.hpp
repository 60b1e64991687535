#pragma once

// Bad-instance constructions for online colorful bin packing.
//
// Fixed generators produce an instance together with an offline packing
// (the certificate) bounding the optimum from above. Interactive adversaries
// pick every next item after observing how the algorithm placed the
// previous one, and assemble their certificate once the game is over.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cbp/algorithms.hpp"
#include "cbp/core.hpp"

namespace cbp {

namespace colors {
inline const Color white{"white"};
inline const Color black{"black"};
inline const Color red{"red"};
inline const Color blue{"blue"};
}  // namespace colors

struct GeneratedInstance {
  std::string family;
  Instance instance;
  Layout certificate;
  std::size_t certificate_bins = 0;
};

enum class Prop1Variant { eps, wf };

// N phases of M white items followed by 2M alternating red/blue items
// (starting red). eps: every size is 1/(N^2 M^2). wf: the last M-1 white
// items of each phase have that size and everything else its square.
// Certificate: M bins, each taking one white, one red and one blue item per
// phase. Requires M >= 4, N >= 2.
GeneratedInstance gen_prop1(Prop1Variant variant, std::int64_t M, std::int64_t N);

// a_i = 2 - (3/4)^(i-1), the pseudo-bin growth factor of the zero-size
// cascade (a_1 = 1, a_i = (3 a_{i-1} + 2) / 4).
Rational cascade_factor(std::int64_t i);

// Zero-size white/red/blue cascade: M white items, then for i = 1..phases
// a_i*M/2 red, (1 - a_i/2)*M blue and M white items. Throws
// std::invalid_argument unless every count is an integer. Certificate: M
// bins.
GeneratedInstance gen_bap_zero_cascade(std::int64_t M, std::int64_t phases);

inline constexpr std::int64_t kMaxCascadeN = 6;

// The cascade with M = 4^(N+1) and N phases; 2 <= N <= kMaxCascadeN.
GeneratedInstance gen_bap_zero(std::int64_t N);

// Cascade followed by 2M-m-1 fresh-colored items of size 2*eps
// (m = (3/4)^N M), M-1 black items of size 1-eps and M-2 fresh-colored items
// of size 2*eps. Requires 0 < eps < 1/(8M). Certificate: M bins.
GeneratedInstance gen_bap_general(std::int64_t N, const Rational& eps);

// Cascade followed by M blue items of sizes delta_t = eps/4^t, M white items
// of sizes 1 - 3 delta_{t+1} and again M blue items of sizes delta_t.
// Requires 0 < eps < 1/(8M). Certificate: M+2 bins.
GeneratedInstance gen_bap_3color(std::int64_t N, const Rational& eps);

// Default eps for the two continuations above: 1/(16M).
Rational default_cascade_eps(std::int64_t N);

struct LemmaCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct AdversaryTranscript {
  std::string adversary;
  std::string algorithm;
  Instance instance;
  Layout packing;  // the algorithm's packing
  std::vector<Observation> observations;
  std::size_t bins_alg = 0;
  Layout certificate;
  std::size_t certificate_bins = 0;
  // lb2: i, j. zero3: phases, and per phase the chosen color and bin count.
  std::map<std::string, std::int64_t> counters;
  std::vector<Color> phase_colors;
  std::vector<std::size_t> phase_bins;
  std::vector<LemmaCheck> checks;

  bool all_checks_passed() const;
  Rational ratio_lower_bound() const { return ratio(bins_alg, certificate_bins); }
};

// Two-color game with eps = 1/N^3 and delta_i = 1/(5^i N^3). Each round a
// white item of size eps and a black item of size delta_i arrive; if the
// black item shares a bin with the white one, a black 3 delta_i, a white
// 1 - 2 delta_i and a black delta_i follow. Stops after N such rounds or N^2
// rounds in total (then N - j white items of size 1 close the input).
// Requires N > 3.
AdversaryTranscript adversary_lb2(OnlineAlgorithm& algorithm, std::int64_t N);

// Zero-size game on white/red/blue: M white items, then per phase 2M items
// alternating between the two colors other than the previous phase's
// color, followed by M items of the color the algorithm has the most bins
// of (ties: white, red, blue). Requires M >= 2, phases >= 1.
AdversaryTranscript adversary_zero3(OnlineAlgorithm& algorithm, std::int64_t M, std::int64_t phases);

inline constexpr std::int64_t kDefaultZero3Phases = 12;

}  // namespace cbp
