// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "graphsteg/attacks.hpp"
#include "graphsteg/audio_io.hpp"
#include "graphsteg/dwt.hpp"
#include "graphsteg/embedder.hpp"
#include "graphsteg/error.hpp"
#include "graphsteg/gbt.hpp"
#include "graphsteg/linalg.hpp"
#include "graphsteg/metrics.hpp"
#include "graphsteg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace graphsteg;

namespace {

constexpr int kCorpusSize = 30;
constexpr double kDuration = 2.0;
constexpr std::uint64_t kCorpusSeed = 2024;
constexpr std::uint64_t kBenchSeed = 11;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

const std::vector<SpeechSignal>& corpus() {
  static const auto c = synth_voiced_corpus(kCorpusSize, kDuration, kCorpusSeed);
  return c;
}

const BenchReport& bench() {
  static const BenchReport report = [] {
    EmbedParams params;
    params.alpha = 0.05;
    const auto suite = default_attack_suite(kBenchSeed, false);
    const std::vector<double> sweep{0.01, 0.05, 0.1, 0.2, 0.35};
    return run_benchmark(corpus(), params, suite, sweep, kBenchSeed);
  }();
  return report;
}

const AttackRow& row(AttackKind kind) {
  for (const auto& r : bench().attacks)
    if (r.spec.kind == kind) return r;
  throw std::runtime_error("missing attack row " + std::string(attack_name(kind)));
}

void round_trip(Outcome& out) {
  const EmbedParams params;
  std::size_t runs = 0, failures = 0, bit_errors = 0;
  for (std::size_t s = 0; s < corpus().size(); ++s) {
    for (std::uint64_t m = 0; m < 100; ++m) {
      const Message msg = random_message(50, derive_seed(kBenchSeed, s * 100 + m, 99));
      ++runs;
      try {
        const auto result = embed(corpus()[s], msg, params);
        // Go through the 16-bit WAV encoding exactly as the CLI does.
        const auto bytes = encode_wav(result.stego);
        const auto stego = decode_wav(bytes);
        const auto key = parse_key(serialize_key(result.key));
        const auto got = extract(stego, key);
        const auto errs = static_cast<std::size_t>(std::lround(ber(msg, got) * 50.0));
        bit_errors += errs;
        if (errs != 0) ++failures;
      } catch (const std::exception& e) {
        ++failures;
        out.detail << " [signal " << s << ": " << e.what() << "]";
      }
    }
  }
  out.detail << runs << " round trips, " << failures << " with errors, " << bit_errors << " bit errors";
  out.check(failures == 0, "BER must be 0 everywhere");
}

void imperceptibility(Outcome& out) {
  const double p = bench().mean_psnr;
  out.detail << "mean PSNR " << fmt(p, 2) << " dB over " << bench().corpus_size << " signals (>= 40)";
  out.check(p >= 40.0, "mean PSNR below 40 dB");

  if (const char* dir = std::getenv("NOIZEUS_DIR"); dir != nullptr && *dir != '\0') {
    std::vector<SpeechSignal> real;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".wav") real.push_back(read_wav(e.path()));
    EmbedParams params;
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < real.size(); ++i) {
      try {
        const auto r = embed(real[i], random_message(50, derive_seed(kBenchSeed, i, 1)), params);
        sum += psnr(real[i], r.stego);
        ++n;
      } catch (const Error&) {
      }
    }
    const double mean = n ? sum / static_cast<double>(n) : 0.0;
    out.detail << "; NOIZEUS mean PSNR " << fmt(mean, 2) << " dB over " << n << " files ([47, 58])";
    out.check(n > 0 && mean >= 47.0 && mean <= 58.0, "NOIZEUS PSNR outside [47, 58]");
  } else {
    out.detail << "; NOIZEUS_DIR not set, real-speech check not run";
  }
}

void robustness(Outcome& out) {
  struct Limit {
    AttackKind kind;
    double max_ber;
  };
  for (const Limit& l : {Limit{AttackKind::Awgn, 0.02}, Limit{AttackKind::Resample, 0.02},
                         Limit{AttackKind::Requantize, 0.0}, Limit{AttackKind::HighPass, 0.05},
                         Limit{AttackKind::LowPass, 0.0}}) {
    const auto& r = row(l.kind);
    out.detail << attack_name(l.kind) << " " << fmt(r.mean_ber) << " (<= " << fmt(l.max_ber, 2) << ") ";
    out.check(!r.skipped && r.n_signals > 0 && r.mean_ber <= l.max_ber, std::string(attack_name(l.kind)));
  }
}

void scaling(Outcome& out) {
  const auto& r = row(AttackKind::Scale);
  out.detail << "scale 0.7 mean BER " << fmt(r.mean_ber) << " over " << r.n_signals << " signals (in [0.35, 0.65])";
  out.check(r.mean_ber >= 0.35 && r.mean_ber <= 0.65, "scaling BER outside band");
}

void sweep_trend(Outcome& out) {
  const auto& sweep = bench().sweep;
  for (const auto& s : sweep)
    out.detail << "a=" << s.alpha << ": PSNR " << fmt(s.mean_psnr, 2) << " BER " << fmt(s.mean_ber, 3) << " (n="
               << s.n_signals << ") ";
  out.check(sweep.size() == 5, "sweep incomplete");
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    out.check(sweep[i].mean_ber <= sweep[i - 1].mean_ber, "BER increases at alpha " + fmt(sweep[i].alpha, 2));
    out.check(sweep[i].mean_psnr <= sweep[i - 1].mean_psnr, "PSNR increases at alpha " + fmt(sweep[i].alpha, 2));
  }
}

void transforms(Outcome& out) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rand_vec = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
  };

  double dwt_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = rand_vec(80);
    const auto y = idwt_multi(dwt_multi(x, 2));
    for (std::size_t k = 0; k < x.size(); ++k) dwt_err = std::max(dwt_err, std::abs(x[k] - y[k]));
  }
  out.detail << "dwt " << dwt_err;
  out.check(dwt_err <= 1e-10, "DWT reconstruction");

  const GraphSpec spec;
  const auto basis = gbt_basis(spec);
  const double orth = max_abs_diff(basis->v.transpose() * basis->v, Matrix::identity(spec.n));
  out.detail << ", VtV-I " << orth;
  out.check(orth <= 1e-9, "GBT orthogonality");

  double gbt_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = rand_vec(spec.n);
    const auto y = gbt_inverse(*basis, gbt_forward(*basis, x));
    for (std::size_t k = 0; k < x.size(); ++k) gbt_err = std::max(gbt_err, std::abs(x[k] - y[k]));
  }
  out.detail << ", gbt " << gbt_err;
  out.check(gbt_err <= 1e-10, "GBT round trip");

  const Matrix lap = laplacian(build_adjacency(spec));
  double row_sum = 0.0;
  for (std::size_t r = 0; r < lap.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < lap.cols(); ++c) s += lap(r, c);
    row_sum = std::max(row_sum, std::abs(s));
  }
  out.detail << ", row sums " << row_sum;
  out.check(row_sum <= 1e-12, "Laplacian row sums");

  const auto& ev = basis->eigenvalues;
  const auto zeros = std::count_if(ev.begin(), ev.end(), [](double l) { return std::abs(l) <= 1e-9; });
  out.detail << ", lambda0 " << ev[0] << ", zero eigenvalues " << zeros;
  out.check(std::abs(ev[0]) <= 1e-9 && zeros == 1, "Laplacian null space");

  double svd_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Matrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = u(rng);
    svd_err = std::max(svd_err, max_abs_diff(svd_small(m).reconstruct(), m));
  }
  out.detail << ", svd " << svd_err;
  out.check(svd_err <= 1e-8, "SVD reconstruction");

  const auto p3 = symmetric_evd(laplacian(build_adjacency(GraphSpec{3, 1.0, 0.0})));
  const double p3_err = std::max({std::abs(p3.eigenvalues[0]), std::abs(p3.eigenvalues[1] - 1.0),
                                  std::abs(p3.eigenvalues[2] - 3.0)});
  out.detail << ", P3 " << p3_err;
  out.check(p3_err <= 1e-9, "P3 eigenvalues");
}

void frame_distortion(Outcome& out) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  EmbedParams params;
  const auto basis = gbt_basis(params.graph);
  double worst = 0.0;
  int embedded = 0, skipped = 0;
  while (embedded < 1000) {
    // Alternate broadband noise frames with harmonic ones.
    Frame f{static_cast<std::size_t>(embedded), std::vector<double>(params.frame_len)};
    const double amp = 0.02 + 0.5 * unit(rng);
    const double f0 = 80.0 + 300.0 * unit(rng), ph = unit(rng);
    for (std::size_t n = 0; n < f.samples.size(); ++n)
      f.samples[n] = (embedded % 2 == 0) ? amp * (2.0 * unit(rng) - 1.0)
                                         : amp * std::sin(2.0 * std::numbers::pi * (f0 * n / 8000.0 + ph));
    const std::uint8_t bit = unit(rng) < 0.5 ? 0 : 1;
    try {
      const auto e = embed_bit(f, bit, params, *basis);
      double d = 0.0;
      for (std::size_t n = 0; n < f.samples.size(); ++n) d += std::pow(e.stego_frame.samples[n] - f.samples[n], 2);
      worst = std::max(worst, std::abs(std::sqrt(d) - params.alpha) / params.alpha);
      ++embedded;
    } catch (const Error&) {
      ++skipped;
    }
  }
  out.detail << embedded << " frames (" << skipped << " ineligible skipped), worst relative error " << worst;
  out.check(worst <= 1e-6, "distortion differs from alpha");
}

int run_cli(const std::string& args) {
  const int raw = std::system((std::string(CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void determinism(Outcome& out) {
  const fs::path dir = fs::temp_directory_path() / ("graphsteg_accept_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string flags = "bench --synth 30 --duration 2 --alpha 0.05 --seed 7 --report ";
  const int a = run_cli(flags + (dir / "a").string());
  const int b = run_cli(flags + (dir / "b").string());
  out.check(a == 0 && b == 0, "bench exited nonzero");
  const auto csv_a = slurp(dir / "a.csv"), csv_b = slurp(dir / "b.csv");
  const auto sw_a = slurp(dir / "a_sweep.csv"), sw_b = slurp(dir / "b_sweep.csv");
  out.detail << "attack CSV " << csv_a.size() << " bytes, sweep CSV " << sw_a.size() << " bytes";
  out.check(!csv_a.empty() && csv_a == csv_b, "attack CSV differs");
  out.check(!sw_a.empty() && sw_a == sw_b, "sweep CSV differs");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"1 round-trip BER = 0", round_trip},
      {"2 imperceptibility", imperceptibility},
      {"3 robustness rows", robustness},
      {"4 scaling signature", scaling},
      {"5 alpha trade-off trend", sweep_trend},
      {"6 transform invariants", transforms},
      {"7 per-frame distortion", frame_distortion},
      {"8 bench determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << c.name << ": " << out.detail.str() << " ("
              << fmt(secs, 1) << " s)" << std::endl;
    if (!out.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
