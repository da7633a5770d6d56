#include "graphsteg/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "graphsteg/error.hpp"

namespace graphsteg {

namespace {

void require_same_shape(const SpeechSignal& a, const SpeechSignal& b) {
  if (a.samples.size() != b.samples.size() || a.sample_rate_hz != b.sample_rate_hz)
    throw Error(ErrorCode::LengthMismatch, "signals differ in length or rate");
}

double squared_error(const SpeechSignal& a, const SpeechSignal& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = a.samples[i] - b.samples[i];
    sum += d * d;
  }
  return sum;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace

double psnr(const SpeechSignal& reference, const SpeechSignal& test) {
  require_same_shape(reference, test);
  if (reference.samples.empty()) throw Error(ErrorCode::LengthMismatch, "empty signals");
  const double err = squared_error(reference, test);
  if (err == 0.0) return kInf;
  const double mse = err / static_cast<double>(reference.samples.size());
  return 10.0 * std::log10(1.0 / mse);
}

double snr(const SpeechSignal& reference, const SpeechSignal& test) {
  require_same_shape(reference, test);
  double power = 0.0;
  for (double s : reference.samples) power += s * s;
  if (power == 0.0) throw Error(ErrorCode::SilentSignal, "reference signal is silent");
  const double err = squared_error(reference, test);
  if (err == 0.0) return kInf;
  return 10.0 * std::log10(power / err);
}

double ber(const Message& sent, const Message& received) {
  if (sent.bits.size() != received.bits.size()) throw Error(ErrorCode::LengthMismatch, "messages differ in length");
  if (sent.bits.empty()) throw Error(ErrorCode::LengthMismatch, "empty messages");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < sent.bits.size(); ++i) errors += sent.bits[i] != received.bits[i] ? 1 : 0;
  return static_cast<double>(errors) / static_cast<double>(sent.bits.size());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt) {
  // splitmix64 finalizer over a mixed input
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1) + 0xbf58476d1ce4e5b9ULL * salt;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Message random_message(std::size_t bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Message m;
  m.bits.reserve(bits);
  for (std::size_t i = 0; i < bits; ++i) m.bits.push_back(static_cast<std::uint8_t>(rng() >> 63));
  return m;
}

std::vector<AttackSpec> default_attack_suite(std::uint64_t seed, bool include_mp3) {
  std::vector<AttackSpec> suite{
      {AttackKind::None, 0.0, 0},
      {AttackKind::Awgn, 20.0, seed},
      {AttackKind::Resample, 16000.0, 0},
      {AttackKind::Requantize, 8.0, 0},
      {AttackKind::LowPass, 4000.0, 0},
      {AttackKind::HighPass, 50.0, 0},
      {AttackKind::Scale, 0.7, 0},
  };
  if (include_mp3) suite.push_back({AttackKind::Mp3External, 128.0, 0});
  return suite;
}

namespace {

struct AttackOutcome {
  std::optional<double> ber;
  std::string note;
  bool unavailable = false;
};

struct SignalOutcome {
  std::optional<double> psnr, snr;
  std::string embed_note;
  std::vector<AttackOutcome> attacks;
  std::vector<std::optional<double>> sweep_psnr, sweep_ber;
};

SignalOutcome evaluate_signal(const SpeechSignal& cover, std::size_t index, const EmbedParams& params,
                              std::span<const AttackSpec> suite, std::span<const double> alphas, std::uint64_t seed,
                              const BenchOptions& options) {
  SignalOutcome out;
  out.attacks.resize(suite.size());
  out.sweep_psnr.resize(alphas.size());
  out.sweep_ber.resize(alphas.size());
  const Message message = random_message(options.message_bits, derive_seed(seed, index, 1));

  try {
    const auto embedded = embed(cover, message, params);
    out.psnr = psnr(cover, embedded.stego);
    out.snr = snr(cover, embedded.stego);
    for (std::size_t a = 0; a < suite.size(); ++a) {
      AttackSpec spec = suite[a];
      if (spec.kind == AttackKind::Awgn) spec.seed = derive_seed(spec.seed, index, 2 + a);
      try {
        const auto attacked = apply_attack(embedded.stego, spec);
        out.attacks[a].ber = ber(message, extract(attacked, embedded.key));
      } catch (const Error& e) {
        out.attacks[a].note = e.what();
        out.attacks[a].unavailable = e.code() == ErrorCode::EncoderUnavailable;
      }
    }
  } catch (const Error& e) {
    out.embed_note = e.what();
  }

  for (std::size_t k = 0; k < alphas.size(); ++k) {
    EmbedParams swept = params;
    swept.alpha = alphas[k];
    try {
      const auto embedded = embed(cover, message, swept);
      out.sweep_psnr[k] = psnr(cover, embedded.stego);
      out.sweep_ber[k] = ber(message, extract(scale(embedded.stego, options.sweep_scale), embedded.key));
    } catch (const Error&) {
      // counted as missing in n_signals
    }
  }
  return out;
}

}  // namespace

BenchReport run_benchmark(std::span<const SpeechSignal> corpus, const EmbedParams& params,
                          std::span<const AttackSpec> attack_suite, std::span<const double> alpha_sweep,
                          std::uint64_t seed, const BenchOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::BadParameter, "benchmark corpus is empty");
  params.validate();
  for (double a : alpha_sweep)
    if (!(a > 0.0)) throw Error(ErrorCode::BadParameter, "sweep alpha values must be positive");

  std::vector<SignalOutcome> outcomes(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++)
      outcomes[i] = evaluate_signal(corpus[i], i, params, attack_suite, alpha_sweep, seed, options);
  };
  const unsigned jobs = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(corpus.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  BenchReport report;
  report.params = params;
  report.seed = seed;
  report.message_bits = options.message_bits;
  report.corpus_size = corpus.size();

  double psnr_sum = 0.0, snr_sum = 0.0;
  std::size_t embedded = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].embed_note.empty()) {
      report.notes.push_back("signal " + std::to_string(i) + ": " + outcomes[i].embed_note);
      continue;
    }
    psnr_sum += *outcomes[i].psnr;
    snr_sum += *outcomes[i].snr;
    ++embedded;
  }
  report.mean_psnr = embedded ? psnr_sum / static_cast<double>(embedded) : std::nan("");
  report.mean_snr = embedded ? snr_sum / static_cast<double>(embedded) : std::nan("");

  for (std::size_t a = 0; a < attack_suite.size(); ++a) {
    AttackRow row;
    row.spec = attack_suite[a];
    double sum = 0.0;
    bool unavailable = false;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (!outcomes[i].embed_note.empty()) continue;
      const auto& o = outcomes[i].attacks[a];
      if (o.ber) {
        sum += *o.ber;
        ++row.n_signals;
      } else {
        unavailable = unavailable || o.unavailable;
        if (!o.unavailable) row.notes.push_back("signal " + std::to_string(i) + ": " + o.note);
      }
    }
    row.skipped = row.n_signals == 0 && unavailable;
    row.mean_ber = row.n_signals ? sum / static_cast<double>(row.n_signals) : std::nan("");
    if (row.skipped) row.notes.push_back("skipped: external encoder unavailable");
    if (row.spec.kind == AttackKind::LowPass && corpus.front().sample_rate_hz > 0 &&
        row.spec.parameter >= corpus.front().sample_rate_hz / 2.0)
      row.notes.push_back("cutoff at or above Nyquist: near-identity filter");
    report.attacks.push_back(std::move(row));
  }

  for (std::size_t k = 0; k < alpha_sweep.size(); ++k) {
    SweepRow row;
    row.alpha = alpha_sweep[k];
    double psum = 0.0, bsum = 0.0;
    for (const auto& o : outcomes) {
      if (!o.sweep_psnr[k]) continue;
      psum += *o.sweep_psnr[k];
      bsum += *o.sweep_ber[k];
      ++row.n_signals;
    }
    row.mean_psnr = row.n_signals ? psum / static_cast<double>(row.n_signals) : std::nan("");
    row.mean_ber = row.n_signals ? bsum / static_cast<double>(row.n_signals) : std::nan("");
    report.sweep.push_back(row);
  }
  return report;
}

std::string format_report_text(const BenchReport& r) {
  std::ostringstream out;
  char line[256];
  out << "Steganography benchmark\n"
      << "  corpus signals: " << r.corpus_size << ", message bits: " << r.message_bits << ", seed: " << r.seed << '\n'
      << "  alpha " << fmt(r.params.alpha, 4) << ", frame_len " << r.params.frame_len << ", dwt_levels "
      << r.params.dwt_levels << ", graph (" << r.params.graph.n << ", " << fmt(r.params.graph.w1, 3) << ", "
      << fmt(r.params.graph.w2, 3) << "), matrix " << r.params.matrix_dim << "x" << r.params.matrix_dim << "\n"
      << "  PSNR peak = 1.0 (normalized full scale)\n\n";

  out << "Imperceptibility (cover vs stego)\n";
  std::snprintf(line, sizeof line, "  %-8s %12s\n", "metric", "mean");
  out << line;
  std::snprintf(line, sizeof line, "  %-8s %12s\n", "PSNR dB", fmt(r.mean_psnr, 2).c_str());
  out << line;
  std::snprintf(line, sizeof line, "  %-8s %12s\n", "SNR dB", fmt(r.mean_snr, 2).c_str());
  out << line;
  for (const auto& [name, value] : r.external_metrics) {
    std::snprintf(line, sizeof line, "  %-8s %12s\n", name.c_str(), value ? fmt(*value, 4).c_str() : "external");
    out << line;
  }

  out << "\nRobustness (mean BER)\n";
  std::snprintf(line, sizeof line, "  %-12s %10s %10s %6s\n", "attack", "parameter", "mean_ber", "n");
  out << line;
  for (const auto& row : r.attacks) {
    std::snprintf(line, sizeof line, "  %-12s %10s %10s %6zu\n", std::string(attack_name(row.spec.kind)).c_str(),
                  fmt(row.spec.parameter, 2).c_str(), row.skipped ? "skipped" : fmt(row.mean_ber, 4).c_str(),
                  row.n_signals);
    out << line;
    for (const auto& note : row.notes) out << "      note: " << note << '\n';
  }

  if (!r.sweep.empty()) {
    out << "\nAlpha sweep (scaling attack 0.7)\n";
    std::snprintf(line, sizeof line, "  %-8s %10s %10s %6s\n", "alpha", "mean_psnr", "mean_ber", "n");
    out << line;
    for (const auto& row : r.sweep) {
      std::snprintf(line, sizeof line, "  %-8s %10s %10s %6zu\n", fmt(row.alpha, 4).c_str(),
                    fmt(row.mean_psnr, 2).c_str(), fmt(row.mean_ber, 4).c_str(), row.n_signals);
      out << line;
    }
  }
  for (const auto& note : r.notes) out << "note: " << note << '\n';
  return out.str();
}

std::string format_attack_csv(const BenchReport& r) {
  std::string out = "attack,parameter,mean_ber,n_signals\n";
  for (const auto& row : r.attacks) {
    out += std::string(attack_name(row.spec.kind)) + "," + fmt(row.spec.parameter, 4) + "," +
           (row.skipped ? std::string("skipped") : fmt(row.mean_ber, 6)) + "," + std::to_string(row.n_signals) + "\n";
  }
  return out;
}

std::string format_sweep_csv(const BenchReport& r) {
  std::string out = "alpha,mean_psnr,mean_ber,n_signals\n";
  for (const auto& row : r.sweep)
    out += fmt(row.alpha, 4) + "," + fmt(row.mean_psnr, 6) + "," + fmt(row.mean_ber, 6) + "," +
           std::to_string(row.n_signals) + "\n";
  return out;
}

}  // namespace graphsteg
