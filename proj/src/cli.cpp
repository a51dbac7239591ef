#include "translit/cli.hpp"

#include <CLI11.hpp>

#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "translit/back_translit.hpp"
#include "translit/corpus.hpp"
#include "translit/error.hpp"
#include "translit/files.hpp"
#include "translit/metrics.hpp"
#include "translit/noiser.hpp"
#include "translit/romanizer.hpp"
#include "translit/subword.hpp"

namespace translit {

namespace {

/// Every flag the tool understands; validated by CLI11 before any work.
struct RunConfig {
  std::string lang = "bn";
  std::string mapping;
  std::string input;
  std::vector<std::string> inputs;
  std::string output;
  std::string mode = "generic";
  std::string source;
  std::string profile;
  std::optional<std::uint64_t> seed;
  std::string vocab;
  std::string lm;
  std::string hyp;
  std::string ref;
  std::string csv_column;
  std::size_t bpe_size = 32000;
  std::size_t order = 5;
  double k = 1.0;
  std::size_t beam = 8;
  std::size_t cer_bucket = 0;
  unsigned threads = 1;
  bool sentence_case = false;
};

std::vector<std::string> read_input_lines(const std::string& path, std::istream& in) {
  if (!path.empty() && path != "-") return read_lines(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  write_file_atomic(path, content);
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

class Tables {
 public:
  Tables(const std::string& lang, const std::string& mapping) : lang_(parse_lang(lang)) {
    if (!mapping.empty()) {
      owned_ = std::make_unique<ScriptTables>(load_mapping(mapping));
      if (owned_->spec.script != script_for(lang_))
        throw ValidationError("mapping " + mapping + " is for " + std::string(to_string(owned_->spec.script)) +
                              ", not language " + lang);
    }
  }
  Lang lang() const { return lang_; }
  const ScriptTables& get() const { return owned_ ? *owned_ : default_tables(script_for(lang_)); }

 private:
  Lang lang_;
  std::unique_ptr<ScriptTables> owned_;
};

void add_lang(CLI::App* sub, RunConfig& c) {
  sub->add_option("--lang", c.lang, "Language: hi or bn")->check(CLI::IsMember({"hi", "bn"}))->capture_default_str();
}
void add_mapping(CLI::App* sub, RunConfig& c) {
  sub->add_option("--mapping", c.mapping, "Mapping TSV (default: bundled table for --lang)");
}
void add_io(CLI::App* sub, RunConfig& c) {
  sub->add_option("-i,--input", c.input, "Input file (default: stdin)");
  sub->add_option("-o,--output", c.output, "Output file (default: stdout)");
}
void add_threads(CLI::App* sub, RunConfig& c) {
  sub->add_option("--threads", c.threads, "Worker threads; never changes output")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
}

void echo_config(const CLI::App& sub, const std::string& path, std::ostream& err) {
  err << "# translit " << path << '\n';
  std::istringstream lines(sub.config_to_str(true, false));
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) err << "#   " << line << '\n';
}

int dispatch(const std::string& which, const RunConfig& c, std::istream& in, std::ostream& out,
             std::ostream& err) {
  if (which == "romanize") {
    Tables tables(c.lang, c.mapping);
    const auto cfg = RomanizerConfig::from(tables.get(), c.sentence_case);
    const auto lines = read_input_lines(c.input, in);
    const auto results = romanize_lines(lines, cfg, c.threads);
    std::string text;
    std::size_t unmapped = 0;
    for (const auto& r : results) {
      text += r.text;
      text += '\n';
      unmapped += r.unmapped_tokens;
    }
    write_output(c.output, text, out);
    err << "lines=" << lines.size() << " unmapped_tokens=" << unmapped << '\n';
    return kExitOk;
  }
  if (which == "noise") {
    NoiseProfile profile = c.profile.empty() ? NoiseProfile{} : load_noise_profile(c.profile);
    if (c.seed) profile.seed = *c.seed;
    const auto lines = read_input_lines(c.input, in);
    write_output(c.output, join_lines(apply_noise_lines(lines, profile, c.threads)), out);
    return kExitOk;
  }
  if (which == "corpus build") {
    Tables tables(c.lang, c.mapping);
    const auto cfg = RomanizerConfig::from(tables.get(), c.sentence_case);
    BuildOptions options{tables.lang(), parse_clean_mode(c.mode), c.source, c.threads};
    std::vector<std::filesystem::path> paths(c.inputs.begin(), c.inputs.end());
    const auto s = build_corpus(paths, cfg, options, c.output);
    out << "lines=" << s.lines_read << " pairs=" << s.pairs_written << " discarded=" << s.discarded()
        << " empty=" << s.discarded_empty << " too_short=" << s.discarded_too_short
        << " markup=" << s.discarded_markup << " unmapped=" << s.unmapped_skipped << '\n';
    return kExitOk;
  }
  if (which == "corpus stats") {
    std::vector<std::string> texts;
    for (const auto& path : c.inputs) {
      auto lines = read_lines(path);
      if (c.csv_column.empty()) {
        for (auto& l : lines)
          if (!l.empty()) texts.push_back(std::move(l));
        continue;
      }
      const std::size_t col = c.csv_column == "native" ? 0 : 1;
      for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = parse_csv_record(lines[i]);
        if (fields.size() != 4) throw ParseError(path, i + 1, "expected 4 CSV fields");
        texts.push_back(std::move(fields[col]));
      }
    }
    write_output(c.output, format_stats_report(compute_stats(texts, c.threads)), out);
    return kExitOk;
  }
  if (which == "bpe train") {
    std::vector<std::string> corpus;
    for (const auto& path : c.inputs) {
      auto lines = read_lines(path);
      corpus.insert(corpus.end(), lines.begin(), lines.end());
    }
    const auto vocab = train_bpe(corpus, c.bpe_size);
    write_output(c.output, format_vocab(vocab), out);
    err << "size=" << vocab.size() << " target=" << vocab.target_size() << " shortfall=" << vocab.shortfall()
        << " merges=" << vocab.merges().size() << '\n';
    return kExitOk;
  }
  if (which == "bpe encode") {
    const auto vocab = load_vocab(c.vocab);
    const Lang lang = parse_lang(c.lang);
    std::string text;
    for (const auto& line : read_input_lines(c.input, in)) {
      const auto ids = encode(line, lang, vocab);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) text += ' ';
        text += std::to_string(ids[i]);
      }
      text += '\n';
    }
    write_output(c.output, text, out);
    return kExitOk;
  }
  if (which == "bpe decode") {
    const auto vocab = load_vocab(c.vocab);
    std::string text;
    std::size_t line_no = 0;
    for (const auto& line : read_input_lines(c.input, in)) {
      ++line_no;
      std::vector<int> ids;
      std::istringstream fields(line);
      std::string field;
      while (fields >> field) {
        try {
          std::size_t used = 0;
          ids.push_back(std::stoi(field, &used));
          if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
          throw ParseError(c.input.empty() ? "<stdin>" : c.input, line_no, "bad token id '" + field + "'");
        }
      }
      text += decode(ids, vocab);
      text += '\n';
    }
    write_output(c.output, text, out);
    return kExitOk;
  }
  if (which == "lm train") {
    Tables tables(c.lang, c.mapping);
    std::vector<std::string> corpus;
    for (const auto& path : c.inputs) {
      auto lines = read_lines(path);
      corpus.insert(corpus.end(), lines.begin(), lines.end());
    }
    const auto lm = train_lm(corpus, c.order, c.k, &tables.get().spec);
    write_output(c.output, format_lm(lm), out);
    err << "contexts=" << lm.contexts().size() << " alphabet=" << lm.alphabet_size() << '\n';
    return kExitOk;
  }
  if (which == "derom") {
    Tables tables(c.lang, c.mapping);
    const auto lm = load_lm(c.lm);
    const ReverseIndex index(tables.get());
    const auto lines = read_input_lines(c.input, in);
    const auto results = derom_lines(lines, index, lm, c.beam, c.threads);
    std::string text;
    std::size_t fallbacks = 0;
    for (const auto& r : results) {
      text += r.text;
      text += '\n';
      fallbacks += r.fallbacks;
    }
    write_output(c.output, text, out);
    err << "lines=" << lines.size() << " fallbacks=" << fallbacks << '\n';
    return kExitOk;
  }
  if (which == "eval") {
    const auto hyps = read_lines(c.hyp);
    const auto refs = read_lines(c.ref);
    const auto report = evaluate_report(hyps, refs);
    std::vector<LengthBucket> buckets;
    if (c.cer_bucket > 0) buckets = cer_by_length(hyps, refs, c.cer_bucket);
    write_output(c.output, format_report(report, buckets), out);
    return kExitOk;
  }
  throw ValidationError("no subcommand given");
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Romanized/native-script transliteration toolkit for Bengali and Hindi", "translit"};
  app.set_config("--config", "", "Optional key=value config file; flags take precedence");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  auto* romanize = app.add_subcommand("romanize", "Native script -> Roman, line by line");
  add_lang(romanize, c);
  add_mapping(romanize, c);
  add_io(romanize, c);
  add_threads(romanize, c);
  romanize->add_flag("--sentence-case", c.sentence_case, "Capitalize sentence-initial letters");

  auto* noise = app.add_subcommand("noise", "Generate informal Roman variants");
  noise->add_option("--profile", c.profile, "key=value noise profile (default: 0.3 per rule, seed 42)");
  noise->add_option("--seed", c.seed, "Override the profile seed");
  add_io(noise, c);
  add_threads(noise, c);

  auto* corpus = app.add_subcommand("corpus", "Corpus construction and statistics");
  corpus->require_subcommand(1);
  auto* build = corpus->add_subcommand("build", "Clean and romanize native text into CSV pairs");
  add_lang(build, c);
  add_mapping(build, c);
  build->add_option("-i,--input", c.inputs, "Input text files, one paragraph per line")->required();
  build->add_option("-o,--output", c.output, "Output CSV")->required();
  build->add_option("--mode", c.mode, "Cleaning mode")
      ->check(CLI::IsMember({"wiki_bn", "generic"}))
      ->capture_default_str();
  build->add_option("--source", c.source, "Source tag (default: input file name)");
  build->add_flag("--sentence-case", c.sentence_case, "Capitalize sentence-initial letters");
  add_threads(build, c);
  auto* stats = corpus->add_subcommand("stats", "Dataset statistics report");
  stats->add_option("-i,--input", c.inputs, "Text files (one text per line) or corpus CSVs")->required();
  stats->add_option("-o,--output", c.output, "Report file (default: stdout)");
  stats->add_option("--csv-column", c.csv_column, "Read this column from corpus CSV inputs")
      ->check(CLI::IsMember({"native", "roman"}));
  add_threads(stats, c);

  auto* bpe = app.add_subcommand("bpe", "Shared subword vocabulary");
  bpe->require_subcommand(1);
  auto* bpe_train = bpe->add_subcommand("train", "Train a vocabulary on Roman text");
  bpe_train->add_option("-i,--input", c.inputs, "Training text files")->required();
  bpe_train->add_option("-o,--output", c.output, "Vocabulary file (default: stdout)");
  bpe_train->add_option("--size", c.bpe_size, "Target vocabulary size, specials included")->capture_default_str();
  auto* bpe_encode = bpe->add_subcommand("encode", "Text -> token ids");
  bpe_encode->add_option("--vocab", c.vocab, "Vocabulary file")->required();
  add_lang(bpe_encode, c);
  add_io(bpe_encode, c);
  auto* bpe_decode = bpe->add_subcommand("decode", "Token ids -> text");
  bpe_decode->add_option("--vocab", c.vocab, "Vocabulary file")->required();
  add_io(bpe_decode, c);

  auto* lm = app.add_subcommand("lm", "Character n-gram language model");
  lm->require_subcommand(1);
  auto* lm_train = lm->add_subcommand("train", "Train on native text");
  add_lang(lm_train, c);
  add_mapping(lm_train, c);
  lm_train->add_option("-i,--input", c.inputs, "Native text files")->required();
  lm_train->add_option("-o,--output", c.output, "Model file (default: stdout)");
  lm_train->add_option("--order", c.order, "n-gram order")->check(CLI::Range(1, 16))->capture_default_str();
  lm_train->add_option("--k", c.k, "Add-k smoothing constant")->check(CLI::PositiveNumber)->capture_default_str();

  auto* derom = app.add_subcommand("derom", "Roman -> native script");
  add_lang(derom, c);
  add_mapping(derom, c);
  derom->add_option("--lm", c.lm, "Model file from `lm train`")->required();
  derom->add_option("--beam", c.beam, "Beam width")->check(CLI::Range(1, 4096))->capture_default_str();
  add_io(derom, c);
  add_threads(derom, c);

  auto* eval = app.add_subcommand("eval", "Score hypotheses against references");
  eval->add_option("--hyp", c.hyp, "Hypothesis file, one segment per line")->required();
  eval->add_option("--ref", c.ref, "Reference file, one segment per line")->required();
  eval->add_option("--cer-by-length", c.cer_bucket, "Also report mean CER per reference-length bucket of N words");
  eval->add_option("-o,--output", c.output, "Report file (default: stdout)");

  std::vector<const char*> args;
  args.reserve(argv.size());
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    app.exit(e, out, err);
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitValidation;
  }

  std::string path;
  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) {
    leaf = leaf->get_subcommands().front();
    if (!path.empty()) path += ' ';
    path += leaf->get_name();
  }
  echo_config(*leaf, path, err);

  try {
    return dispatch(path, c, in, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace translit
