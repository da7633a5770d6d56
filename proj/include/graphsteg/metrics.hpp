#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphsteg/attacks.hpp"
#include "graphsteg/audio_io.hpp"
#include "graphsteg/embedder.hpp"
#include "graphsteg/pipeline.hpp"

namespace graphsteg {

/// 10 log10(1 / MSE) with full scale 1.0; +inf for identical signals.
double psnr(const SpeechSignal& reference, const SpeechSignal& test);

/// 10 log10(sum ref^2 / sum (ref - test)^2); +inf for identical signals.
double snr(const SpeechSignal& reference, const SpeechSignal& test);

/// Fraction of differing bit positions.
double ber(const Message& sent, const Message& received);

/// Random message of `bits` bits, deterministic in seed.
Message random_message(std::size_t bits, std::uint64_t seed);

/// Seed for item `index` of a run seeded with `seed` (stable across platforms).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t salt = 0);

struct AttackRow {
  AttackSpec spec;
  double mean_ber = 0.0;
  std::size_t n_signals = 0;
  bool skipped = false;
  std::vector<std::string> notes;
};

struct SweepRow {
  double alpha = 0.0;
  double mean_psnr = 0.0;
  double mean_ber = 0.0;  // under scale 0.7
  std::size_t n_signals = 0;
};

struct BenchReport {
  EmbedParams params;
  std::uint64_t seed = 0;
  std::size_t message_bits = 50;
  std::size_t corpus_size = 0;
  double mean_psnr = 0.0;
  double mean_snr = 0.0;
  std::vector<AttackRow> attacks;
  std::vector<SweepRow> sweep;
  std::vector<std::string> notes;
  // Values from third-party tools (PESQ, STOI); nullopt until supplied.
  std::map<std::string, std::optional<double>> external_metrics{{"PESQ", std::nullopt}, {"STOI", std::nullopt}};
};

struct BenchOptions {
  std::size_t message_bits = 50;
  unsigned jobs = 1;
  double sweep_scale = 0.7;
};

/// Table-style default attack suite; the MP3 row is included only when
/// include_mp3 is set.
std::vector<AttackSpec> default_attack_suite(std::uint64_t seed, bool include_mp3);

/// Embeds a fresh seeded message in every corpus signal, runs each attack,
/// and averages BER per attack; then repeats embedding for every sweep alpha
/// under the scaling attack. Averages are summed in corpus order so the
/// report does not depend on `jobs`.
BenchReport run_benchmark(std::span<const SpeechSignal> corpus, const EmbedParams& params,
                          std::span<const AttackSpec> attack_suite, std::span<const double> alpha_sweep,
                          std::uint64_t seed, const BenchOptions& options = {});

std::string format_report_text(const BenchReport& report);
/// Columns: attack,parameter,mean_ber,n_signals
std::string format_attack_csv(const BenchReport& report);
/// Columns: alpha,mean_psnr,mean_ber,n_signals
std::string format_sweep_csv(const BenchReport& report);

}  // namespace graphsteg
