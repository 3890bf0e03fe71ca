#include "convtag/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "convtag/audioseg.hpp"
#include "convtag/error.hpp"
#include "convtag/rules.hpp"
#include "convtag/synth.hpp"
#include "text_io.hpp"

namespace convtag::pipeline {

namespace fs = std::filesystem;

Featurizer::Featurizer(TextOptions options, textprep::NgramVocab vocab)
    : options_(std::move(options)), vocab_(std::move(vocab)), names_(textprep::feature_names(vocab_)) {}

Featurizer Featurizer::fit(const corpus::Corpus& train, TextOptions options) {
  std::vector<textprep::TokenSeq> docs;
  docs.reserve(train.size());
  for (const auto& s : train.segments()) docs.push_back(textprep::normalize(s.text, options.stopwords, options.stem));
  if (docs.empty()) throw Error(ErrorCode::InvalidArgument, "cannot build a vocabulary from an empty corpus");
  auto vocab = textprep::extract_ngram_vocab(docs, options.ngram, options.min_freq);
  return Featurizer(std::move(options), std::move(vocab));
}

textprep::TokenSeq Featurizer::tokens(const std::string& text) const {
  return textprep::normalize(text, options_.stopwords, options_.stem);
}

textprep::FeatureVector Featurizer::features(const std::string& text) const {
  return textprep::featurize(tokens(text), vocab_);
}

evaluate::BoolColumn TagMatrix::column(std::size_t keyword) const {
  evaluate::BoolColumn out;
  out.reserve(bits.size());
  for (const auto& row : bits) out.push_back(row.at(keyword));
  return out;
}

TagMatrix empty_tags(const corpus::Corpus& corpus) {
  TagMatrix t;
  t.keywords = corpus.keywords();
  for (const auto& s : corpus.segments()) {
    t.session_ids.push_back(s.session_id);
    t.segment_ids.push_back(s.segment_id);
    t.bits.emplace_back(t.keywords.size(), 0);
  }
  return t;
}

linmodel::FeatureMatrix keyword_matrix(const corpus::Corpus& corpus, const Featurizer& featurizer,
                                       std::size_t keyword) {
  linmodel::FeatureMatrix m;
  m.feature_names = featurizer.feature_names();
  for (const auto& s : corpus.segments()) {
    m.rows.push_back(featurizer.features(s.text));
    m.labels.push_back(s.labels.at(keyword));
  }
  return m;
}

linmodel::LogisticModel train_logit(const linmodel::FeatureMatrix& data, const LogitOptions& options) {
  linmodel::Selection selection;
  if (data.num_features() > 0) selection = linmodel::best_first_search(data, {options.stale_limit});
  const auto projected = linmodel::project(data, selection.features);
  linmodel::LogisticOptions lo;
  lo.ridge = options.ridge;
  return linmodel::train_logistic(projected, lo);
}

seqtree::Dataset keyword_dataset(const corpus::Corpus& corpus, const Featurizer& featurizer, std::size_t keyword) {
  seqtree::Dataset d;
  d.attributes = {{"text", seqtree::AttributeType::Sequential}};
  d.classes = {"absent", "present"};
  for (const auto& s : corpus.segments()) {
    const auto toks = featurizer.tokens(s.text);
    d.instances.push_back({{seqtree::to_sequence(toks)}});
    d.labels.push_back(s.labels.at(keyword) ? 1 : 0);
  }
  return d;
}

LogitModels train_logit_models(const corpus::Corpus& train, const Featurizer& featurizer, const LogitOptions& options) {
  LogitModels out;
  for (std::size_t k = 0; k < train.keywords().size(); ++k)
    out[train.keywords()[k]] = train_logit(keyword_matrix(train, featurizer, k), options);
  return out;
}

TreeModels train_tree_models(const corpus::Corpus& train, const Featurizer& featurizer,
                             const seqtree::TreeParams& params) {
  TreeModels out;
  for (std::size_t k = 0; k < train.keywords().size(); ++k)
    out[train.keywords()[k]] = seqtree::induce_tree(keyword_dataset(train, featurizer, k), params);
  return out;
}

TagMatrix tag_with_logit(const corpus::Corpus& corpus, const Featurizer& featurizer, const LogitModels& models) {
  TagMatrix t = empty_tags(corpus);
  std::vector<std::pair<std::size_t, linmodel::BoundModel>> bound;
  for (std::size_t k = 0; k < t.keywords.size(); ++k) {
    const auto it = models.find(t.keywords[k]);
    if (it == models.end()) throw Error(ErrorCode::State, "no logistic model for keyword '" + t.keywords[k] + "'");
    bound.emplace_back(k, linmodel::BoundModel(it->second, featurizer.feature_names()));
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto x = featurizer.features(corpus.segments()[i].text);
    for (const auto& [k, model] : bound) t.bits[i][k] = model.predict(x).present ? 1 : 0;
  }
  return t;
}

TagMatrix tag_with_tree(const corpus::Corpus& corpus, const Featurizer& featurizer, const TreeModels& models) {
  TagMatrix t = empty_tags(corpus);
  std::vector<const seqtree::DecisionTree*> trees;
  for (const auto& k : t.keywords) {
    const auto it = models.find(k);
    if (it == models.end()) throw Error(ErrorCode::State, "no tree model for keyword '" + k + "'");
    const auto& classes = it->second.classes;
    if (classes.size() != 2 || classes[1] != "present")
      throw Error(ErrorCode::Schema, "tree for '" + k + "' is not an absent/present tagger");
    trees.push_back(&it->second);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    seqtree::Instance inst{{seqtree::to_sequence(featurizer.tokens(corpus.segments()[i].text))}};
    for (std::size_t k = 0; k < trees.size(); ++k)
      t.bits[i][k] = seqtree::predict_tree(*trees[k], inst).label == 1 ? 1 : 0;
  }
  return t;
}

TagMatrix tag_with_regex(const corpus::Corpus& corpus, std::span<const regex::RegexAtom> atoms) {
  TagMatrix t = empty_tags(corpus);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto hits = regex::tag_regex(atoms, corpus.segments()[i].text);
    for (std::size_t k = 0; k < t.keywords.size(); ++k) t.bits[i][k] = hits.count(t.keywords[k]) ? 1 : 0;
  }
  return t;
}

TagMatrix combine_or(const TagMatrix& a, const TagMatrix& b) {
  if (a.keywords != b.keywords || a.segment_ids != b.segment_ids)
    throw Error(ErrorCode::InvalidArgument, "cannot combine tag sets over different segments or keywords");
  TagMatrix out = a;
  for (std::size_t k = 0; k < a.keywords.size(); ++k) {
    const auto merged = evaluate::hybrid_or(a.column(k), b.column(k));
    for (std::size_t i = 0; i < merged.size(); ++i) out.bits[i][k] = merged[i];
  }
  return out;
}

void write_predictions(const TagMatrix& tags, std::ostream& out) {
  out << "session_id\tsegment_id\tkeyword\tpresent\n";
  for (std::size_t i = 0; i < tags.bits.size(); ++i)
    for (std::size_t k = 0; k < tags.keywords.size(); ++k)
      out << tags.session_ids[i] << '\t' << tags.segment_ids[i] << '\t' << tags.keywords[k] << '\t'
          << int{tags.bits[i][k]} << '\n';
}

TagMatrix read_predictions(const fs::path& path) {
  auto in = detail::open_input(path);
  const std::string src = path.string();
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(src, 1, "missing header");
  ++lineno;
  detail::strip_cr(line);
  if (line != "session_id\tsegment_id\tkeyword\tpresent") throw ParseError(src, 1, "unexpected header");

  TagMatrix t;
  std::map<std::string, std::size_t> kw_index;
  std::unordered_map<std::string, std::size_t> seg_index;
  struct Cell {
    std::size_t seg, kw;
    std::uint8_t bit;
  };
  std::vector<Cell> cells;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto f = detail::split(line, '\t');
    if (f.size() != 4) throw ParseError(src, lineno, "expected 4 fields");
    if (f[3] != "0" && f[3] != "1") throw ParseError(src, lineno, "presence must be 0 or 1");
    auto [kit, knew] = kw_index.try_emplace(f[2], t.keywords.size());
    if (knew) t.keywords.push_back(f[2]);
    auto [sit, snew] = seg_index.try_emplace(f[1], t.segment_ids.size());
    if (snew) {
      t.segment_ids.push_back(f[1]);
      t.session_ids.push_back(f[0]);
    } else if (t.session_ids[sit->second] != f[0]) {
      throw ParseError(src, lineno, "segment '" + f[1] + "' listed under two sessions");
    }
    cells.push_back({sit->second, kit->second, static_cast<std::uint8_t>(f[3] == "1")});
  }
  t.bits.assign(t.segment_ids.size(), std::vector<std::uint8_t>(t.keywords.size(), 2));
  for (const auto& c : cells) {
    if (t.bits[c.seg][c.kw] != 2)
      throw ParseError(src, 0, "duplicate entry for segment '" + t.segment_ids[c.seg] + "'");
    t.bits[c.seg][c.kw] = c.bit;
  }
  for (std::size_t i = 0; i < t.bits.size(); ++i)
    for (auto b : t.bits[i])
      if (b == 2) throw ParseError(src, 0, "segment '" + t.segment_ids[i] + "' lacks some keywords");
  return t;
}

std::vector<evaluate::MetricRow> evaluate_tags(const TagMatrix& predicted, const corpus::Corpus& gold) {
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < predicted.segment_ids.size(); ++i) row_of[predicted.segment_ids[i]] = i;
  std::vector<evaluate::MetricRow> rows;
  for (std::size_t gk = 0; gk < gold.keywords().size(); ++gk) {
    const auto& name = gold.keywords()[gk];
    const auto kit = std::find(predicted.keywords.begin(), predicted.keywords.end(), name);
    if (kit == predicted.keywords.end()) throw Error(ErrorCode::Schema, "predictions lack keyword '" + name + "'");
    const auto pk = static_cast<std::size_t>(kit - predicted.keywords.begin());
    evaluate::BoolColumn pred, truth;
    for (const auto& s : gold.segments()) {
      const auto it = row_of.find(s.segment_id);
      if (it == row_of.end()) throw Error(ErrorCode::Schema, "no prediction for segment '" + s.segment_id + "'");
      pred.push_back(predicted.bits[it->second][pk]);
      truth.push_back(s.labels[gk]);
    }
    rows.push_back(evaluate::metrics(evaluate::confusion(pred, truth), name));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

fs::path require_path(const config::Config& cfg, const std::string& key) {
  auto p = cfg.get_path(key);
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "configuration key '" + key + "' must be set");
  return p;
}

TextOptions text_options(const config::Config& cfg) {
  TextOptions o;
  const auto sw = cfg.get_path("paths.stopwords");
  if (!sw.empty()) o.stopwords = textprep::load_stopwords(sw);
  o.stem = cfg.get_bool("text.stem");
  o.ngram = static_cast<int>(cfg.get_int("text.ngram"));
  o.min_freq = cfg.get_double("text.min_freq");
  return o;
}

seqtree::TreeParams tree_params(const config::Config& cfg) {
  seqtree::TreeParams p;
  p.miner.max_gap = static_cast<int>(cfg.get_int("tree.max_gap"));
  const auto max_len = cfg.get_int("tree.max_pattern_length");
  if (max_len < 1) throw Error(ErrorCode::InvalidArgument, "tree.max_pattern_length must be positive");
  p.miner.max_pattern_length = static_cast<std::size_t>(max_len);
  p.miner.max_time = cfg.get_double("tree.max_time");
  p.miner.min_support = cfg.get_double("tree.min_support");
  p.miner.pattern_weight = cfg.get_double("tree.pattern_weight");
  p.miner.use_ig_pruning = cfg.get_bool("tree.ig_pruning");
  const auto min_leaf = cfg.get_int("tree.min_leaf");
  if (min_leaf < 1) throw Error(ErrorCode::InvalidArgument, "tree.min_leaf must be positive");
  p.min_leaf = static_cast<std::size_t>(min_leaf);
  p.confidence = cfg.get_double("tree.confidence");
  return p;
}

LogitOptions logit_options(const config::Config& cfg) {
  LogitOptions o;
  o.ridge = cfg.get_double("logit.ridge");
  if (o.ridge < 0) throw Error(ErrorCode::InvalidArgument, "logit.ridge must be non-negative");
  const auto stale = cfg.get_int("logit.stale_limit");
  if (stale < 1) throw Error(ErrorCode::InvalidArgument, "logit.stale_limit must be positive");
  o.stale_limit = static_cast<std::size_t>(stale);
  return o;
}

audioseg::SilenceParams silence_params(const config::Config& cfg) {
  audioseg::SilenceParams p;
  p.min_silence_len = cfg.get_double("audio.min_silence_ms");
  p.silence_thresh = cfg.get_double("audio.silence_thresh");
  p.keep_silence = cfg.get_double("audio.keep_silence_ms");
  p.min_segment_len = cfg.get_double("audio.min_segment_ms");
  p.step = cfg.get_double("audio.step_ms");
  return p;
}

std::uint64_t seed_of(const config::Config& cfg) {
  const auto s = cfg.get_int("run.seed");
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "run.seed must be non-negative");
  return static_cast<std::uint64_t>(s);
}

const std::set<std::string> kStrategies = {"regex", "logit", "tree", "hybrid"};

std::string strategy_of(const config::Config& cfg) {
  const auto s = cfg.get("run.strategy");
  if (!kStrategies.count(s)) throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + s + "'");
  return s;
}

std::vector<std::string> hybrid_components(const config::Config& cfg) {
  auto parts = cfg.get_list("run.hybrid");
  if (parts.size() < 2) throw Error(ErrorCode::InvalidArgument, "run.hybrid needs at least two strategies");
  for (const auto& p : parts)
    if (p == "hybrid" || !kStrategies.count(p))
      throw Error(ErrorCode::InvalidArgument, "run.hybrid: invalid component '" + p + "'");
  return parts;
}

fs::path models_dir(const config::Config& cfg) { return require_path(cfg, "paths.models"); }
fs::path reports_dir(const config::Config& cfg) { return require_path(cfg, "paths.reports"); }

fs::path tag_input(const config::Config& cfg) {
  auto p = cfg.get_path("paths.tag_input");
  return p.empty() ? models_dir(cfg) / "test.tsv" : p;
}

fs::path predictions_path(const config::Config& cfg, const std::string& strategy) {
  auto p = cfg.get_path("paths.predictions");
  return p.empty() ? reports_dir(cfg) / ("predictions_" + strategy + ".tsv") : p;
}

Featurizer load_featurizer(const config::Config& cfg) {
  const auto vocab_path = models_dir(cfg) / "vocab.tsv";
  if (!fs::exists(vocab_path)) throw Error(ErrorCode::State, "'" + vocab_path.string() + "' missing; run prepare first");
  return Featurizer(text_options(cfg), textprep::load_vocab(vocab_path));
}

corpus::Corpus load_train(const config::Config& cfg) {
  const auto p = models_dir(cfg) / "train.tsv";
  if (!fs::exists(p)) throw Error(ErrorCode::State, "'" + p.string() + "' missing; run prepare first");
  return corpus::load_corpus(p);
}

void cmd_synth(const config::Config& cfg, std::ostream& out) {
  synth::SynthOptions o;
  const auto sessions = cfg.get_int("synth.sessions");
  const auto per = cfg.get_int("synth.segments_per_session");
  if (sessions < 1 || per < 1) throw Error(ErrorCode::InvalidArgument, "synth sizes must be positive");
  o.sessions = static_cast<std::size_t>(sessions);
  o.segments_per_session = static_cast<std::size_t>(per);
  o.noise = cfg.get_double("synth.noise");
  o.seed = seed_of(cfg);
  const auto c = synth::generate_corpus(o);
  const auto corpus_path = require_path(cfg, "paths.corpus");
  corpus::save_corpus(c, corpus_path);
  out << "wrote " << c.size() << " segments to " << corpus_path.string() << "\n";
  if (const auto atoms = cfg.get_path("paths.atoms"); !atoms.empty()) {
    auto f = detail::open_output(atoms);
    for (const auto& [k, p] : synth::regex_atoms()) f << k << '\t' << p << '\n';
    out << "wrote regex atoms to " << atoms.string() << "\n";
  }
  if (const auto rules = cfg.get_path("paths.rules"); !rules.empty()) {
    auto f = detail::open_output(rules);
    f << synth::rules_text();
    out << "wrote rules to " << rules.string() << "\n";
  }
}

void cmd_prepare(const config::Config& cfg, std::ostream& out) {
  const auto c = corpus::load_corpus(require_path(cfg, "paths.corpus"));
  const auto split = corpus::split_train_test(c, cfg.get_double("split.fraction"), seed_of(cfg));
  const auto dir = models_dir(cfg);
  corpus::save_corpus(split.train, dir / "train.tsv");
  corpus::save_corpus(split.test, dir / "test.tsv");
  const auto featurizer = Featurizer::fit(split.train, text_options(cfg));
  textprep::save_vocab(featurizer.vocab(), dir / "vocab.tsv");
  // Sparse matrix: indices of present features per segment.
  auto f = detail::open_output(dir / "train_features.tsv");
  f << "segment_id\tfeatures\n";
  for (const auto& s : split.train.segments()) {
    const auto bits = featurizer.features(s.text);
    f << s.segment_id << '\t';
    bool first = true;
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (bits[j]) {
        f << (first ? "" : ",") << j;
        first = false;
      }
    f << '\n';
  }
  out << "train " << split.train.size() << " segments in " << split.train.sessions().size() << " sessions, test "
      << split.test.size() << " segments in " << split.test.sessions().size() << " sessions, "
      << featurizer.vocab().size() << " features\n";
}

void train_strategy(const std::string& strategy, const config::Config& cfg, const corpus::Corpus& train,
                    const Featurizer& featurizer, std::ostream& out) {
  const auto dir = models_dir(cfg);
  if (strategy == "logit") {
    const auto models = train_logit_models(train, featurizer, logit_options(cfg));
    for (const auto& [k, m] : models) {
      linmodel::save_model(m, dir / "logit" / (k + ".model"));
      out << "logit " << k << ": " << m.features.size() << " features\n";
    }
  } else if (strategy == "tree") {
    const auto models = train_tree_models(train, featurizer, tree_params(cfg));
    for (const auto& [k, t] : models) {
      seqtree::save_tree(t, dir / "tree" / (k + ".tree"));
      out << "tree " << k << ": " << t.node_count() << " nodes, " << t.leaf_count() << " leaves\n";
    }
  } else if (strategy == "regex") {
    out << "regex: nothing to train\n";
  }
}

void cmd_train(const config::Config& cfg, std::ostream& out) {
  const auto strategy = strategy_of(cfg);
  const auto train = load_train(cfg);
  const auto featurizer = load_featurizer(cfg);
  if (strategy == "hybrid") {
    for (const auto& s : hybrid_components(cfg)) train_strategy(s, cfg, train, featurizer, out);
  } else {
    train_strategy(strategy, cfg, train, featurizer, out);
  }
}

TagMatrix tag_strategy(const std::string& strategy, const config::Config& cfg, const corpus::Corpus& input) {
  if (strategy == "regex") {
    const auto atoms = regex::load_atoms(require_path(cfg, "paths.atoms"));
    return tag_with_regex(input, atoms);
  }
  const auto featurizer = load_featurizer(cfg);
  const auto dir = models_dir(cfg);
  if (strategy == "logit") {
    LogitModels models;
    for (const auto& k : input.keywords()) models[k] = linmodel::load_model(dir / "logit" / (k + ".model"));
    return tag_with_logit(input, featurizer, models);
  }
  TreeModels models;
  for (const auto& k : input.keywords()) models[k] = seqtree::load_tree(dir / "tree" / (k + ".tree"));
  return tag_with_tree(input, featurizer, models);
}

void save_predictions(const TagMatrix& t, const fs::path& path) {
  auto f = detail::open_output(path);
  write_predictions(t, f);
  if (!f) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

void cmd_tag(const config::Config& cfg, std::ostream& out) {
  const auto strategy = strategy_of(cfg);
  const auto input = corpus::load_corpus(tag_input(cfg));
  TagMatrix result;
  if (strategy == "hybrid") {
    const auto parts = hybrid_components(cfg);
    std::vector<fs::path> written;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto t = tag_strategy(parts[i], cfg, input);
      const auto p = reports_dir(cfg) / ("predictions_" + parts[i] + ".tsv");
      save_predictions(t, p);
      written.push_back(p);
      result = i == 0 ? t : combine_or(result, t);
    }
    if (cfg.get_bool("run.verify_hybrid")) {
      // Recompute the union from the files just written.
      TagMatrix check = read_predictions(written[0]);
      for (std::size_t i = 1; i < written.size(); ++i) {
        const auto other = read_predictions(written[i]);
        for (std::size_t r = 0; r < check.bits.size(); ++r)
          for (std::size_t k = 0; k < check.keywords.size(); ++k) check.bits[r][k] |= other.bits[r][k];
      }
      if (!(check == result)) throw Error(ErrorCode::State, "hybrid output differs from the union of its components");
    }
  } else {
    result = tag_strategy(strategy, cfg, input);
  }
  const auto path = predictions_path(cfg, strategy);
  save_predictions(result, path);
  std::size_t positives = 0;
  for (const auto& row : result.bits)
    for (auto b : row) positives += b;
  out << strategy << ": tagged " << result.bits.size() << " segments, " << positives << " keyword hits -> "
      << path.string() << "\n";
}

void cmd_evaluate(const config::Config& cfg, std::ostream& out) {
  const auto strategy = strategy_of(cfg);
  const auto predicted = read_predictions(predictions_path(cfg, strategy));
  const auto gold = corpus::load_corpus(tag_input(cfg));
  const auto rows = evaluate_tags(predicted, gold);
  const auto dir = reports_dir(cfg);
  {
    auto f = detail::open_output(dir / ("metrics_" + strategy + ".txt"));
    evaluate::write_table(rows, f);
  }
  {
    auto f = detail::open_output(dir / ("metrics_" + strategy + ".tsv"));
    evaluate::write_tsv(rows, f);
  }
  evaluate::write_table(rows, out);
}

void cmd_assess(const config::Config& cfg, std::ostream& out) {
  const auto strategy = strategy_of(cfg);
  const auto predicted = read_predictions(predictions_path(cfg, strategy));
  const std::set<std::string> keywords(predicted.keywords.begin(), predicted.keywords.end());
  const auto rule_set = rules::load_rules(require_path(cfg, "paths.rules"), keywords);
  rules::SeverityScale scale;
  scale.most_to_least.clear();
  for (const auto& s : cfg.get_list("rules.severity_order")) {
    int v = 0;
    if (!detail::parse_number(s, v)) throw Error(ErrorCode::InvalidArgument, "rules.severity_order: bad value '" + s + "'");
    scale.most_to_least.push_back(v);
  }
  for (const auto& r : rule_set) scale.rank(r.severity);

  std::vector<std::string> order;
  std::map<std::string, std::vector<rules::TagSet>> calls;
  for (std::size_t i = 0; i < predicted.bits.size(); ++i) {
    auto [it, fresh] = calls.try_emplace(predicted.session_ids[i]);
    if (fresh) order.push_back(predicted.session_ids[i]);
    rules::TagSet tags;
    for (std::size_t k = 0; k < predicted.keywords.size(); ++k)
      if (predicted.bits[i][k]) tags.insert(predicted.keywords[k]);
    it->second.push_back(std::move(tags));
  }
  auto f = detail::open_output(reports_dir(cfg) / "assessment.tsv");
  f << "call_id\tmax_severity\tfailures\n";
  std::size_t flagged = 0;
  for (const auto& id : order) {
    const auto a = rules::assess_call(id, calls[id], rule_set, scale);
    rules::write_assessment(a, f);
    rules::write_assessment(a, out);
    flagged += a.failures.empty() ? 0 : 1;
  }
  out << flagged << " of " << order.size() << " calls flagged\n";
}

std::vector<std::pair<std::string, std::string>> read_transcripts(const fs::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (detail::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path.string(), lineno, "expected id<TAB>text");
    std::string id = line.substr(0, tab);
    if (!seen.insert(id).second) throw ParseError(path.string(), lineno, "duplicate id '" + id + "'");
    out.emplace_back(std::move(id), line.substr(tab + 1));
  }
  return out;
}

void cmd_wer(const config::Config& cfg, std::ostream& out) {
  const auto refs = read_transcripts(require_path(cfg, "paths.reference"));
  const auto hyps = read_transcripts(require_path(cfg, "paths.hypothesis"));
  std::unordered_map<std::string, std::string> hyp_of(hyps.begin(), hyps.end());
  textprep::StopwordSet filter;
  const bool filtered = cfg.get_bool("wer.filter_stopwords");
  if (filtered) filter = text_options(cfg).stopwords;
  const textprep::StopwordSet none;

  auto rep = detail::open_output(reports_dir(cfg) / "wer.tsv");
  rep << "id\tedits\treference_words\twer\n";
  std::size_t edits = 0, words = 0;
  for (const auto& [id, text] : refs) {
    const auto it = hyp_of.find(id);
    const auto ref = textprep::normalize(text, none, false);
    const auto hyp = it == hyp_of.end() ? textprep::TokenSeq{} : textprep::normalize(it->second, none, false);
    const auto c = evaluate::wer_counts(ref, hyp, filtered ? &filter : nullptr);
    edits += c.edits;
    words += c.reference_words;
    rep << id << '\t' << c.edits << '\t' << c.reference_words << '\t'
        << detail::format_double(static_cast<double>(c.edits) / static_cast<double>(c.reference_words)) << '\n';
  }
  if (words == 0) throw Error(ErrorCode::InvalidArgument, "no reference words");
  out << "WER " << evaluate::format_metric(static_cast<double>(edits) / static_cast<double>(words)) << " (" << edits
      << " edits / " << words << " words" << (filtered ? ", stopwords removed" : "") << ")\n";
}

void cmd_segment_audio(const config::Config& cfg, std::ostream& out) {
  const auto in = require_path(cfg, "paths.audio_in");
  const auto dest = require_path(cfg, "paths.audio_out");
  std::vector<fs::path> inputs;
  if (fs::is_directory(in)) {
    for (const auto& e : fs::directory_iterator(in))
      if (e.is_regular_file() && e.path().extension() == ".wav") inputs.push_back(e.path());
    std::sort(inputs.begin(), inputs.end());
  } else if (fs::exists(in)) {
    inputs.push_back(in);
  } else {
    throw Error(ErrorCode::Io, "'" + in.string() + "' does not exist");
  }
  const auto params = silence_params(cfg);
  for (const auto& p : inputs) {
    const auto written = audioseg::split_file(p, dest, params);
    out << p.filename().string() << ": " << written.size() << " segments\n";
    for (const auto& w : written)
      out << "  " << w.path.filename().string() << " [" << w.span.start_ms << ", " << w.span.end_ms << "] ms\n";
  }
}

}  // namespace

void run(const std::string& subcommand, const config::Config& cfg, std::ostream& out) {
  if (subcommand == "synth") cmd_synth(cfg, out);
  else if (subcommand == "prepare") cmd_prepare(cfg, out);
  else if (subcommand == "train") cmd_train(cfg, out);
  else if (subcommand == "tag") cmd_tag(cfg, out);
  else if (subcommand == "evaluate") cmd_evaluate(cfg, out);
  else if (subcommand == "assess") cmd_assess(cfg, out);
  else if (subcommand == "wer") cmd_wer(cfg, out);
  else if (subcommand == "segment-audio") cmd_segment_audio(cfg, out);
  else throw Error(ErrorCode::InvalidArgument, "unknown subcommand '" + subcommand + "'");
}

}  // namespace convtag::pipeline
