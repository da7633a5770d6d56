// graphsteg: hide bits in the voiced frames of a speech WAV and get them back.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graphsteg/attacks.hpp"
#include "graphsteg/audio_io.hpp"
#include "graphsteg/error.hpp"
#include "graphsteg/metrics.hpp"
#include "graphsteg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace graphsteg;

namespace {

// Flag validation failures; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

struct StructureFlags {
  std::size_t frame_len = 80;
  int dwt_levels = 2;
  std::size_t graph_n = 20;
  double w1 = 1.0;
  double w2 = 0.3;
  std::size_t matrix_dim = 4;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--frame-len", frame_len, "Samples per frame")->capture_default_str();
    cmd->add_option("--dwt-levels", dwt_levels, "Haar DWT levels")->capture_default_str();
    cmd->add_option("--graph-n", graph_n, "Graph node count (frame_len / 2^levels)")->capture_default_str();
    cmd->add_option("--w1", w1, "First-neighbour edge weight")->capture_default_str();
    cmd->add_option("--w2", w2, "Second-neighbour edge weight")->capture_default_str();
    cmd->add_option("--matrix-dim", matrix_dim, "Side of the SVD matrix")->capture_default_str();
  }

  EmbedParams params(double alpha) const {
    EmbedParams p;
    p.alpha = alpha;
    p.frame_len = frame_len;
    p.dwt_levels = dwt_levels;
    p.graph = GraphSpec{graph_n, w1, w2};
    p.matrix_dim = matrix_dim;
    try {
      p.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v > 0.0)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad --sweep entry '" + item + "'");
    }
  }
  return out;
}

std::vector<SpeechSignal> load_corpus_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && ext == ".wav") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SpeechSignal> corpus;
  for (const auto& f : files) corpus.push_back(read_wav(f));
  return corpus;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Speech steganography in voiced frames (Haar DWT, graph transform, SVD)"};
  app.require_subcommand(1);

  // embed
  std::string cover_path, stego_out, key_out, bits, message_file;
  double alpha = 0.05;
  StructureFlags embed_structure;
  auto* embed_cmd = app.add_subcommand("embed", "Hide a message in a cover WAV");
  embed_cmd->add_option("--cover", cover_path, "Cover WAV")->required();
  auto* bits_opt = embed_cmd->add_option("--bits", bits, "Message as a string of 0/1 characters");
  auto* file_opt = embed_cmd->add_option("--message-file", message_file, "Message bytes, expanded MSB first");
  bits_opt->excludes(file_opt);
  embed_cmd->add_option("--alpha", alpha, "Embedding strength")->capture_default_str();
  embed_cmd->add_option("--out", stego_out, "Stego WAV output")->required();
  embed_cmd->add_option("--key", key_out, "Key file output")->required();
  embed_structure.add_to(embed_cmd);

  // extract
  std::string stego_path, key_path, message_out, expected;
  auto* extract_cmd = app.add_subcommand("extract", "Recover a message with its key");
  extract_cmd->add_option("--stego", stego_path, "Stego WAV")->required();
  extract_cmd->add_option("--key", key_path, "Key file")->required();
  extract_cmd->add_option("--out", message_out, "Write recovered bits here (default: stdout)");
  extract_cmd->add_option("--expected", expected, "Expected bits; prints the bit error ratio");

  // attack
  std::string attack_in, attack_out, attack_kind;
  double attack_param = 0.0;
  std::uint64_t attack_seed = 0;
  auto* attack_cmd = app.add_subcommand("attack", "Apply one degradation to a WAV");
  attack_cmd->add_option("--in", attack_in, "Input WAV")->required();
  attack_cmd->add_option("--out", attack_out, "Output WAV")->required();
  attack_cmd->add_option("--kind", attack_kind, "none|awgn|resample|requantize|lowpass|highpass|scale|mp3")->required();
  attack_cmd->add_option("--param", attack_param, "SNR dB, rate Hz, bits, cutoff Hz, factor or kbps")->required();
  attack_cmd->add_option("--seed", attack_seed, "Noise seed (awgn)")->capture_default_str();

  // evaluate
  std::string eval_ref, eval_test;
  auto* eval_cmd = app.add_subcommand("evaluate", "Print PSNR and SNR between two WAVs");
  eval_cmd->add_option("--reference", eval_ref, "Reference WAV")->required();
  eval_cmd->add_option("--test", eval_test, "Test WAV")->required();

  // bench
  std::string corpus_dir, report_prefix, sweep_text = "0.01,0.05,0.1,0.2,0.35";
  int synth_count = 0;
  double bench_duration = 2.0;
  std::uint64_t bench_seed = 1;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::size_t message_bits = 50;
  double bench_alpha = 0.05;
  std::vector<std::string> external;
  StructureFlags bench_structure;
  auto* bench_cmd = app.add_subcommand("bench", "Run the attack suite and alpha sweep over a corpus");
  auto* corpus_opt = bench_cmd->add_option("--corpus", corpus_dir, "Directory of WAV files");
  auto* synth_opt = bench_cmd->add_option("--synth", synth_count, "Use N synthetic signals instead");
  corpus_opt->excludes(synth_opt);
  bench_cmd->add_option("--duration", bench_duration, "Synthetic signal length in seconds")->capture_default_str();
  bench_cmd->add_option("--alpha", bench_alpha, "Embedding strength")->capture_default_str();
  bench_cmd->add_option("--sweep", sweep_text, "Comma-separated alpha values")->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed, "Seed for corpus, messages and noise")->capture_default_str();
  bench_cmd->add_option("--bits", message_bits, "Message length per signal")->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_option("--report", report_prefix, "Writes <prefix>.txt, <prefix>.csv, <prefix>_sweep.csv")->required();
  bench_cmd->add_option("--external", external, "External metric NAME=VALUE (e.g. PESQ=4.0)");
  bench_structure.add_to(bench_cmd);

  // synth
  int synth_n = 30;
  double synth_duration = 2.0;
  std::uint64_t synth_seed = 1;
  std::string synth_dir;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic voiced-speech corpus");
  synth_cmd->add_option("--count", synth_n, "Number of signals")->capture_default_str();
  synth_cmd->add_option("--duration", synth_duration, "Seconds per signal")->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--out-dir", synth_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*embed_cmd) {
      if (!(alpha > 0.0)) throw UsageError("--alpha must be positive");
      if (bits.empty() == message_file.empty()) throw UsageError("give exactly one of --bits or --message-file");
      const EmbedParams params = embed_structure.params(alpha);
      Message message;
      try {
        message = bits.empty() ? message_from_bytes(read_text(message_file)) : message_from_bitstring(bits);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::BadParameter) throw UsageError(e.what());
        throw;
      }
      if (message.bits.empty()) throw UsageError("message is empty");
      const SpeechSignal cover = read_wav(cover_path);
      const auto result = embed(cover, message, params);
      write_wav(result.stego, stego_out);
      write_text(key_out, serialize_key(result.key));
      std::cout << "bits " << message.bits.size() << '\n'
                << "voiced_frames " << result.voiced_frames << '\n'
                << "psnr_db " << psnr(cover, result.stego) << '\n';
    } else if (*extract_cmd) {
      Message want;
      if (!expected.empty()) {
        try {
          want = message_from_bitstring(expected);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
      }
      const StegoKey key = parse_key(read_text(key_path));
      const Message got = extract(read_wav(stego_path), key);
      const std::string text = message_to_bitstring(got);
      if (message_out.empty()) std::cout << text << '\n';
      else write_text(message_out, text + "\n");
      if (!expected.empty()) {
        char line[32];
        std::snprintf(line, sizeof line, "BER %.3f", ber(want, got));
        std::cout << line << '\n';
      }
    } else if (*attack_cmd) {
      const auto kind = attack_from_name(attack_kind);
      if (!kind) throw UsageError("unknown attack kind '" + attack_kind + "'");
      const auto attacked = apply_attack(read_wav(attack_in), AttackSpec{*kind, attack_param, attack_seed});
      write_wav(attacked, attack_out);
    } else if (*eval_cmd) {
      const auto ref = read_wav(eval_ref);
      const auto test = read_wav(eval_test);
      std::cout << "psnr_db " << psnr(ref, test) << '\n' << "snr_db " << snr(ref, test) << '\n';
    } else if (*bench_cmd) {
      if (!(bench_alpha > 0.0)) throw UsageError("--alpha must be positive");
      if (corpus_dir.empty() && synth_count <= 0) throw UsageError("give --corpus DIR or --synth N (N >= 1)");
      if (message_bits == 0) throw UsageError("--bits must be at least 1");
      if (jobs == 0) throw UsageError("--jobs must be at least 1");
      const auto sweep = parse_sweep(sweep_text);
      const EmbedParams params = bench_structure.params(bench_alpha);
      std::map<std::string, double> ext_values;
      for (const auto& kv : external) {
        const auto eq = kv.find('=');
        try {
          if (eq == std::string::npos) throw std::invalid_argument(kv);
          ext_values[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
          throw UsageError("bad --external entry '" + kv + "'");
        }
      }

      const auto corpus = corpus_dir.empty() ? synth_voiced_corpus(synth_count, bench_duration, bench_seed)
                                             : load_corpus_dir(corpus_dir);
      if (corpus.empty()) {
        std::cerr << "error: corpus is empty\n";
        return 1;
      }
      const bool with_mp3 = std::getenv("STEGO_MP3_CMD") != nullptr;
      const auto suite = default_attack_suite(bench_seed, with_mp3);
      BenchOptions options;
      options.message_bits = message_bits;
      options.jobs = jobs;
      auto report = run_benchmark(corpus, params, suite, sweep, bench_seed, options);
      for (const auto& [name, value] : ext_values) report.external_metrics[name] = value;
      const std::string text = format_report_text(report);
      write_text(report_prefix + ".txt", text);
      write_text(report_prefix + ".csv", format_attack_csv(report));
      write_text(report_prefix + "_sweep.csv", format_sweep_csv(report));
      std::cout << text;
    } else if (*synth_cmd) {
      if (synth_n < 1) throw UsageError("--count must be at least 1");
      if (!(synth_duration > 0.0)) throw UsageError("--duration must be positive");
      const auto corpus = synth_voiced_corpus(synth_n, synth_duration, synth_seed);
      fs::create_directories(synth_dir);
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "synth_%03zu.wav", i);
        write_wav(corpus[i], fs::path(synth_dir) / name);
      }
      std::cout << "wrote " << corpus.size() << " signals to " << synth_dir << '\n';
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InsufficientVoicedFrames) {
      // Message already reads "insufficient voiced frames (have K, need N)".
      const std::string what = e.what();
      std::cerr << "error: " << what.substr(what.find(": ") + 2) << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
