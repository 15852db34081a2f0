// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "conesphere/circle_lens.hpp"
#include "conesphere/elliptic.hpp"
#include "conesphere/errors.hpp"
#include "conesphere/montecarlo.hpp"
#include "conesphere/offaxis.hpp"
#include "conesphere/onaxis.hpp"
#include "conesphere/quadrature.hpp"
#include "conesphere/slice_classifier.hpp"
#include "conesphere/volume.hpp"
#include "oracles.hpp"

using namespace conesphere;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// 1-sigma binomial error of a hit-or-miss estimate under p = V / Vs.
double null_sigma(double V, double Vs, std::uint64_t n) {
  const double p = std::clamp(V / Vs, 0.0, 1.0);
  return Vs * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

Outcome on_axis_closed_forms() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0;
  int inside = 0, outside = 0;
  for (int i = 0; i < 500; ++i) {
    const double R = 0.5 + 1.5 * U(rng);
    const bool in = i % 2 == 0;
    const double d = in ? R * (2 * U(rng) - 1) : -R * (1 + 4 * U(rng));
    const double phi = 0.01 + (kHalfPi - 0.01) * U(rng);
    const double v = in ? volume_on_axis_inside(R, d, phi).volume : volume_on_axis_outside(R, d, phi).volume;
    const double q = volume_quadrature({R, d, 0, phi}).volume;
    worst = std::max(worst, std::abs(v - q) / (R * R * R));
    (in ? inside : outside)++;
  }
  return {worst <= 1e-9, std::to_string(inside) + " apex-inside + " + std::to_string(outside) + " apex-outside draws, max |dV|/R^3 " +
                             fmt("%.2e", worst)};
}

Outcome limiting_cases() {
  double worst[4] = {0, 0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    const double t = (i + 0.5) / 100.0;
    const double R = 0.5 + 1.5 * t;
    const double R3 = R * R * R;
    const double phi = kPi * t;
    worst[0] = std::max(worst[0], rel(compute_volume(CanonicalGeometry{R, 0, 0, phi}).volume, 2 * kPi / 3 * R3 * (1 - std::cos(phi))));

    const double d = R * (2 * t - 1), h = R - d;
    worst[1] = std::max(worst[1], rel(compute_volume(CanonicalGeometry{R, d, 0, kHalfPi}).volume, kPi * h * h * (3 * R - h) / 3));

    const double p = kHalfPi * t, s = std::sin(p), c = std::cos(p);
    worst[2] = std::max(worst[2], rel(compute_volume(CanonicalGeometry{R, -R, 0, p}).volume, 4 * kPi / 3 * R3 * s * s * (1 + c * c)));

    const double ps = kHalfPi + kHalfPi * t, ds = R * (4 * t - 2);
    const double sum = compute_volume(CanonicalGeometry{R, ds, 0, ps}).volume + compute_volume(CanonicalGeometry{R, -ds, 0, kPi - ps}).volume;
    worst[3] = std::max(worst[3], rel(sum, sphere_volume(R)));
  }
  const bool ok = std::all_of(std::begin(worst), std::end(worst), [](double w) { return w <= 1e-12; });
  return {ok, "max rel: apex at center " + fmt("%.1e", worst[0]) + ", half-space cap " + fmt("%.1e", worst[1]) + ", apex on surface " +
                  fmt("%.1e", worst[2]) + ", complement " + fmt("%.1e", worst[3])};
}

CanonicalGeometry draw_off_axis(CaseLabel want, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  for (;;) {
    const double R = 0.5 + 1.5 * U(rng), phi = 0.02 + (kHalfPi - 0.04) * U(rng);
    double dh, bh;
    if (want == CaseLabel::OffAxisApexInside) {
      dh = 2 * U(rng) - 1;
      bh = U(rng);
      if (dh * dh + bh * bh >= 1) continue;
    } else {
      dh = -5 + 6 * U(rng);
      bh = 3 * U(rng);
    }
    const CanonicalGeometry g{R, R * dh, R * bh, phi};
    if (g.b > 0 && classify(g) == want) return g;
  }
}

Outcome off_axis_agreement() {
  std::mt19937_64 rng(303);
  std::string detail;
  bool ok = true;
  for (CaseLabel label : {CaseLabel::OffAxisApexInside, CaseLabel::OffAxisTwoBranch, CaseLabel::OffAxisOneBranch}) {
    int flagged = 0;
    double worst = 0;
    for (int i = 0; i < 500; ++i) {
      const CanonicalGeometry g = draw_off_axis(label, rng);
      double v;
      try {
        v = volume_off_axis(g, label).volume;
      } catch (const ConditioningError&) {
        ++flagged;
        continue;
      }
      worst = std::max(worst, rel(v, volume_quadrature(g).volume));
    }
    ok = ok && worst <= 1e-8 && flagged <= 10;
    detail += std::string(to_string(label)) + " flagged " + std::to_string(flagged) + "/500 max rel " + fmt("%.1e", worst) + "; ";
  }
  return {ok, detail};
}

CanonicalGeometry draw_labeled(CaseLabel want, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  const bool on_axis = want == CaseLabel::OnAxisApexInside || want == CaseLabel::OnAxisApexOutside;
  for (;;) {
    const double R = 0.5 + 1.5 * U(rng);
    double phi = 0.05 + (kPi - 0.1) * U(rng);
    if (want == CaseLabel::HalfSpace) phi = kHalfPi;
    if (on_axis || want == CaseLabel::OffAxisApexInside || want == CaseLabel::OffAxisTwoBranch || want == CaseLabel::OffAxisOneBranch)
      phi = 0.05 + (kHalfPi - 0.1) * U(rng);
    const double d = R * (-6 + 8 * U(rng));
    const double b = on_axis ? 0.0 : R * 3 * U(rng);
    const CanonicalGeometry g{R, d, b, phi};
    if (classify(g) == want) return g;
  }
}

Outcome monte_carlo_concordance() {
  const CaseLabel labels[] = {CaseLabel::Disjoint,          CaseLabel::SphereInsideCone, CaseLabel::OnAxisApexInside,
                              CaseLabel::OnAxisApexOutside, CaseLabel::OffAxisApexInside, CaseLabel::OffAxisTwoBranch,
                              CaseLabel::OffAxisOneBranch,  CaseLabel::HalfSpace,        CaseLabel::Stretched};
  std::mt19937_64 rng(404);
  McSpec mc;
  mc.samples = 10'000'000;
  int n = 0, bad = 0;
  double worst = 0;
  for (int i = 0; i < 60; ++i) {
    const CanonicalGeometry g = draw_labeled(labels[i % 9], rng);
    mc.seed = derive_seed(404, static_cast<std::uint64_t>(i));
    const double v = compute_volume(g).volume;
    const McResult e = mc_volume(g, mc);
    const double s = null_sigma(v, sphere_volume(g.R), e.samples);
    const double dev = std::abs(e.estimate - v);
    // p = 0 or 1: every sample must agree, up to rounding of V itself.
    const double z = s > 0 ? dev / s : (dev <= 1e-12 * sphere_volume(g.R) ? 0 : INFINITY);
    worst = std::max(worst, z);
    if (z > 4) {
      ++bad;
      std::fprintf(stderr, "  criterion 4 outlier: R=%.17g d=%.17g b=%.17g phi=%.17g %s V=%.17g mc=%.17g sigma=%.3g\n", g.R, g.d, g.b, g.phi,
                   std::string(to_string(classify(g))).c_str(), v, e.estimate, s);
    }
    ++n;
  }
  return {bad == 0, std::to_string(n) + " geometries over 9 labels, 1e7 samples each, max deviation " + fmt("%.2f", worst) + " sigma"};
}

Outcome continuity() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> U(0, 1);
  double worst_b = 0, worst_phi = 0;
  for (int i = 0; i < 100; ++i) {
    const double R = 0.5 + 1.5 * U(rng);
    const double d = R * (-3 + 3.9 * U(rng)), phi = 0.05 + 1.45 * U(rng);
    const double near = compute_volume(CanonicalGeometry{R, d, 1e-6 * R, phi}).volume;
    const double on = volume_on_axis(R, d, phi).volume;
    if (on > 0) worst_b = std::max(worst_b, rel(near, on));

    const double dc = R * (-1 + 1.9 * U(rng)), b = 2 * R * U(rng);
    const double h = R - dc;
    worst_phi = std::max(worst_phi, rel(compute_volume(CanonicalGeometry{R, dc, b, kHalfPi - 1e-6}).volume, kPi * h * h * (3 * R - h) / 3));
  }
  return {worst_b <= 1e-4 && worst_phi <= 1e-4,
          "b = 1e-6 R vs on-axis max rel " + fmt("%.1e", worst_b) + "; phi = pi/2 - 1e-6 vs cap max rel " + fmt("%.1e", worst_phi)};
}

Outcome elliptic_kernel() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> M(1e-3, 1 - 1e-3), K(0, 0.95), A2(-4, 0.9), A(-0.95, 0.95);
  double legendre = 0, seq = 0;
  for (int i = 0; i < 100; ++i) {
    const double k2 = M(rng), kp2 = 1 - k2;
    const Real l = ellint_E(k2) * ellint_K(kp2) + ellint_E(kp2) * ellint_K(k2) - ellint_K(k2) * ellint_K(kp2);
    legendre = std::max(legendre, std::abs(static_cast<double>(l) - kHalfPi));
  }
  for (int i = 0; i < 50; ++i) {
    const double k2 = K(rng), a2 = A2(rng), alpha = A(rng);
    const auto V = v_sequence(6, a2, k2);
    const auto Rq = r_sequence(6, alpha, k2, Amplitude::Quarter);
    const auto Rh = r_sequence(6, alpha, k2, Amplitude::Half);
    for (int m = 0; m <= 6; ++m) {
      seq = std::max(seq, rel(static_cast<double>(V[static_cast<std::size_t>(m)]), oracle::quad_V(m, a2, k2)));
      seq = std::max(seq, rel(Rq[m], oracle::quad_R(m, alpha, k2, false)));
      seq = std::max(seq, rel(Rh[m], oracle::quad_R(m, alpha, k2, true)));
    }
  }
  return {legendre <= 1e-12 && seq <= 1e-9,
          "Legendre max |dev| " + fmt("%.1e", legendre) + " (100 moduli); V and R sequences m <= 6 max rel " + fmt("%.1e", seq) + " (50 draws)"};
}

Outcome lens_area_checks() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> U(0, 1);
  bool ok = std::abs(lens_area(1, 1, std::sqrt(2.0)) - (kPi / 2 - 1)) <= 1e-15;
  int asym = 0, nonmono = 0, outliers = 0;
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double r1 = 0.2 + 1.8 * U(rng), r2 = 0.2 + 1.8 * U(rng), b = 1.1 * (r1 + r2) * U(rng);
    const double a = lens_area(r1, r2, b);
    asym += std::abs(a - lens_area(r2, r1, b)) > 1e-13 * std::min(r1, r2) * std::min(r1, r2);
    nonmono += lens_area(r1, r2, b * 1.01 + 1e-3) > a + 1e-14;
    const auto e = oracle::mc_lens_area(r1, r2, b, 1'000'000, 7000 + i);
    const double box = 4 * r1 * r1;
    const double s = null_sigma(a, box, 1'000'000);
    const double dev = std::abs(e.value - a);
    const double z = s > 0 ? dev / s : (dev == 0 ? 0 : INFINITY);
    worst = std::max(worst, z);
    outliers += z > 4;
  }
  ok = ok && asym == 0 && nonmono == 0 && outliers == 0;
  return {ok, "pi/2 - 1 exact, " + std::to_string(asym) + " asymmetric, " + std::to_string(nonmono) + " non-monotone, 2-D sampling max " +
                  fmt("%.2f", worst) + " sigma over 1000 triples"};
}

Outcome classifier_sampling() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> U(0, 1);
  McSpec mc;
  mc.samples = 100'000;
  int found = 0, wrong = 0, disjoint = 0;
  while (found < 100) {
    const double R = 0.5 + 1.5 * U(rng);
    const CanonicalGeometry g{R, R * (-8 + 14 * U(rng)), R * 4 * U(rng), 0.02 + (kHalfPi - 0.04) * U(rng)};
    const auto r = slice_roots(g);
    if (r.z1.real || r.z2.real) continue;
    ++found;
    const CaseLabel label = classify(g);
    mc.seed = derive_seed(808, static_cast<std::uint64_t>(found));
    const McResult e = mc_volume(g, mc);
    if (label == CaseLabel::Disjoint) {
      ++disjoint;
      wrong += e.hits != 0;
    } else if (label == CaseLabel::SphereInsideCone) {
      wrong += e.hits != e.samples;
    } else {
      ++wrong;
    }
  }
  return {wrong == 0, std::to_string(found) + " all-complex geometries (" + std::to_string(disjoint) + " Disjoint, " +
                          std::to_string(found - disjoint) + " SphereInsideCone), " + std::to_string(wrong) + " disagreements"};
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "conesphere_acceptance";
  fs::create_directories(dir);
  {
    std::ofstream in(dir / "batch.csv");
    in << "R,d,b,phi,method,seed\n";
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> U(0, 1);
    const char* methods[] = {"auto", "quadrature", "montecarlo", "elliptic"};
    for (int i = 0; i < 40; ++i) {
      in << 0.5 + U(rng) << ',' << -4 + 5 * U(rng) << ',' << 2 * U(rng) << ',' << 0.05 + 3 * U(rng) << ',' << methods[i % 4] << ','
         << (i % 8 == 2 ? "77" : "") << '\n';
    }
  }
  const auto run = [&](const std::string& out, const std::string& threads) {
    std::vector<std::string> args{"conesphere", "--batch", (dir / "batch.csv").string(), "--out", (dir / out).string(), "--samples",
                                  "200000",     "--seed",  "12345",                      "--threads", threads};
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream o, e;
    cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  };
  run("a.csv", "1");
  run("b.csv", "1");
  run("c.csv", "4");
  run("d.csv", "3");
  const auto slurp = [&](const char* name) {
    std::ifstream f(dir / name, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  };
  const std::string a = slurp("a.csv");
  const bool ok = !a.empty() && a == slurp("b.csv") && a == slurp("c.csv") && a == slurp("d.csv");
  return {ok, "40-row batch, mixed methods incl. Monte Carlo; 2 runs at 1 thread, runs at 3 and 4 threads byte-identical: " +
                  std::string(ok ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional criterion numbers select a subset.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {1, "on-axis closed forms vs quadrature", on_axis_closed_forms, 10},
      {2, "limiting cases", limiting_cases, 0},
      {3, "off-axis elliptic vs quadrature", off_axis_agreement, 60},
      {4, "Monte Carlo concordance", monte_carlo_concordance, 300},
      {5, "continuity at b -> 0 and phi -> pi/2", continuity, 0},
      {6, "elliptic kernel", elliptic_kernel, 0},
      {7, "lens area", lens_area_checks, 0},
      {8, "classifier trivial labels", classifier_sampling, 0},
      {9, "CLI determinism", cli_determinism, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += " [over the " + fmt("%.0f", c.budget_s) + " s budget]";
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
