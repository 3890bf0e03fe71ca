#include "convtag/corpus.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::corpus {

using detail::split;

namespace {

bool has_control_separator(std::string_view s) {
  return s.find_first_of("\t\n\r") != std::string_view::npos;
}

}  // namespace

Corpus::Corpus(std::vector<std::string> keywords, std::vector<Segment> segments)
    : keywords_(std::move(keywords)), segments_(std::move(segments)) {
  std::unordered_set<std::string> names;
  for (const auto& kw : keywords_) {
    if (kw.empty() || has_control_separator(kw))
      throw Error(ErrorCode::Schema, "keyword names must be non-empty and tab-free");
    if (!names.insert(kw).second)
      throw Error(ErrorCode::Schema, "duplicate keyword '" + kw + "'");
  }
  std::unordered_set<std::string> ids;
  for (const auto& seg : segments_) {
    if (seg.session_id.empty())
      throw Error(ErrorCode::Schema, "segment '" + seg.segment_id + "' has an empty session id");
    if (seg.segment_id.empty()) throw Error(ErrorCode::Schema, "empty segment id");
    if (has_control_separator(seg.session_id) || has_control_separator(seg.segment_id) ||
        has_control_separator(seg.text))
      throw Error(ErrorCode::Schema,
                  "segment '" + seg.segment_id + "' contains a tab or line break");
    if (seg.labels.size() != keywords_.size())
      throw Error(ErrorCode::Schema, "segment '" + seg.segment_id + "' has " +
                                         std::to_string(seg.labels.size()) + " labels, expected " +
                                         std::to_string(keywords_.size()));
    if (!ids.insert(seg.segment_id).second)
      throw Error(ErrorCode::Schema, "duplicate segment id '" + seg.segment_id + "'");
  }
}

std::optional<std::size_t> Corpus::keyword_index(std::string_view name) const {
  const auto it = std::find(keywords_.begin(), keywords_.end(), name);
  if (it == keywords_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - keywords_.begin());
}

bool Corpus::label(std::size_t segment, std::string_view keyword) const {
  const auto k = keyword_index(keyword);
  if (!k) throw Error(ErrorCode::InvalidArgument, "unknown keyword '" + std::string(keyword) + "'");
  return segments_.at(segment).labels[*k] != 0;
}

std::vector<std::uint8_t> Corpus::label_column(std::size_t keyword) const {
  std::vector<std::uint8_t> col;
  col.reserve(segments_.size());
  for (const auto& seg : segments_) col.push_back(seg.labels.at(keyword));
  return col;
}

std::vector<std::string> Corpus::sessions() const {
  std::vector<std::string> order;
  std::unordered_set<std::string> seen;
  for (const auto& seg : segments_)
    if (seen.insert(seg.session_id).second) order.push_back(seg.session_id);
  return order;
}

Corpus parse_corpus(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header line");
  detail::strip_cr(line);
  const auto header = split(line, '\t');
  if (header.size() < 3 || header[0] != "session_id" || header[1] != "segment_id" ||
      header[2] != "text")
    throw ParseError(source, 1, "header must start with session_id, segment_id, text");
  std::vector<std::string> keywords(header.begin() + 3, header.end());

  std::vector<Segment> segments;
  std::unordered_set<std::string> ids;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != header.size())
      throw ParseError(source, lineno,
                       "expected " + std::to_string(header.size()) + " columns, found " +
                           std::to_string(fields.size()));
    Segment seg;
    seg.session_id = std::move(fields[0]);
    seg.segment_id = std::move(fields[1]);
    seg.text = std::move(fields[2]);
    if (seg.session_id.empty()) throw ParseError(source, lineno, "empty session id");
    if (!ids.insert(seg.segment_id).second)
      throw ParseError(source, lineno, "duplicate segment id '" + seg.segment_id + "'");
    for (std::size_t k = 3; k < fields.size(); ++k) {
      if (fields[k] == "1")
        seg.labels.push_back(1);
      else if (fields[k] == "0")
        seg.labels.push_back(0);
      else
        throw ParseError(source, lineno,
                         "label for '" + header[k] + "' must be 0 or 1, got '" + fields[k] + "'");
    }
    segments.push_back(std::move(seg));
  }
  try {
    return Corpus(std::move(keywords), std::move(segments));
  } catch (const Error& e) {
    throw ParseError(source, 1, e.what());
  }
}

Corpus load_corpus(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_corpus(in, path.string());
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  out << "session_id\tsegment_id\ttext";
  for (const auto& kw : corpus.keywords()) out << '\t' << kw;
  out << '\n';
  for (const auto& seg : corpus.segments()) {
    out << seg.session_id << '\t' << seg.segment_id << '\t' << seg.text;
    for (auto v : seg.labels) out << '\t' << (v ? '1' : '0');
    out << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_corpus(corpus, out);
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Split

namespace {

struct SessionStats {
  std::vector<std::size_t> rows;
  // [0] = segment count, [1 + k] = positives of keyword k
  std::vector<double> counts;
};

double split_cost(const std::vector<double>& train, const std::vector<double>& assigned,
                  double fraction, double count_weight) {
  double cost = 0.0;
  for (std::size_t d = 0; d < train.size(); ++d) {
    const double dev = train[d] - fraction * assigned[d];
    cost += (d == 0 ? count_weight : 1.0) * dev * dev;
  }
  return cost;
}

Corpus subset(const Corpus& corpus, const std::vector<std::size_t>& rows) {
  std::vector<Segment> segs;
  segs.reserve(rows.size());
  for (auto r : rows) segs.push_back(corpus.segments()[r]);
  return Corpus(corpus.keywords(), std::move(segs));
}

}  // namespace

TrainTestSplit split_train_test(const Corpus& corpus, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "train fraction must lie in (0, 1)");

  const std::size_t dims = 1 + corpus.keywords().size();
  std::vector<SessionStats> sessions;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    const auto& seg = corpus.segments()[r];
    auto [it, inserted] = index.try_emplace(seg.session_id, sessions.size());
    if (inserted) sessions.push_back({{}, std::vector<double>(dims, 0.0)});
    auto& st = sessions[it->second];
    st.rows.push_back(r);
    st.counts[0] += 1.0;
    for (std::size_t k = 0; k < seg.labels.size(); ++k) st.counts[1 + k] += seg.labels[k];
  }
  if (sessions.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "a grouped split needs at least two sessions");

  std::vector<std::size_t> order(sessions.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }

  // The segment-count dimension weighs as much as all keywords together.
  const double count_weight = std::max<double>(1.0, static_cast<double>(dims - 1));
  std::vector<double> train(dims, 0.0), assigned(dims, 0.0);
  std::vector<std::uint8_t> to_train(sessions.size(), 0);
  for (auto s : order) {
    const auto& c = sessions[s].counts;
    std::vector<double> next_assigned = assigned, next_train = train;
    for (std::size_t d = 0; d < dims; ++d) {
      next_assigned[d] += c[d];
      next_train[d] += c[d];
    }
    const double cost_train = split_cost(next_train, next_assigned, train_fraction, count_weight);
    const double cost_test = split_cost(train, next_assigned, train_fraction, count_weight);
    bool pick_train = cost_train < cost_test;
    if (cost_train == cost_test) pick_train = train[0] <= train_fraction * assigned[0];
    if (pick_train) {
      train = std::move(next_train);
      to_train[s] = 1;
    }
    assigned = std::move(next_assigned);
  }

  // Both sides must receive at least one session.
  const auto n_train = static_cast<std::size_t>(std::count(to_train.begin(), to_train.end(), 1));
  if (n_train == 0 || n_train == sessions.size()) {
    const std::uint8_t from = n_train == 0 ? 0 : 1;
    std::size_t best = sessions.size();
    for (auto s : order)
      if (to_train[s] == from &&
          (best == sessions.size() || sessions[s].counts[0] < sessions[best].counts[0]))
        best = s;
    to_train[best] = static_cast<std::uint8_t>(1 - from);
  }

  std::vector<std::size_t> train_rows, test_rows;
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    const auto s = index.at(corpus.segments()[r].session_id);
    (to_train[s] ? train_rows : test_rows).push_back(r);
  }
  return {subset(corpus, train_rows), subset(corpus, test_rows)};
}

// ---------------------------------------------------------------------------
// Schema

namespace {

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(sep);
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  if (value.empty()) return {};
  return split(value, ',');
}

struct Record {
  std::size_t line = 0;
  std::string id;
  std::map<std::string, std::string> fields;
};

std::vector<Record> read_records(const std::filesystem::path& path) {
  std::vector<Record> out;
  if (!std::filesystem::exists(path)) return out;
  auto in = detail::open_input(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::strip_cr(line);
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto parts = split(line, '\t');
    Record rec;
    rec.line = lineno;
    rec.id = parts[0];
    if (rec.id.empty()) throw ParseError(path.string(), lineno, "empty id");
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto eq = parts[i].find('=');
      if (eq == std::string::npos)
        throw ParseError(path.string(), lineno, "expected field=value, got '" + parts[i] + "'");
      rec.fields[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string field(const Record& rec, const std::string& name) {
  const auto it = rec.fields.find(name);
  return it == rec.fields.end() ? std::string() : it->second;
}

}  // namespace

Schema load_schema(const std::filesystem::path& dir) {
  Schema schema;
  for (const auto& rec : read_records(dir / "keywords.tsv")) schema.keywords.push_back({rec.id});

  const auto atoms_path = (dir / "atoms.tsv").string();
  for (const auto& rec : read_records(dir / "atoms.tsv")) {
    Atom atom;
    atom.id = rec.id;
    const auto kind = field(rec, "kind");
    if (kind == "regex")
      atom.kind = AtomKind::RegEx;
    else if (kind == "ml")
      atom.kind = AtomKind::ML;
    else
      throw ParseError(atoms_path, rec.line, "kind must be regex or ml");
    const auto transcriber = field(rec, "transcriber");
    if (transcriber.empty() || transcriber == "internal")
      atom.transcriber = Transcriber::Internal;
    else if (transcriber == "external")
      atom.transcriber = Transcriber::External;
    else
      throw ParseError(atoms_path, rec.line, "transcriber must be internal or external");
    atom.keyword = field(rec, "keyword");
    atom.service = field(rec, "service");
    atom.pattern = field(rec, "pattern");
    atom.model = field(rec, "model");
    atom.parameters = split_list(field(rec, "parameters"));
    atom.predictors = split_list(field(rec, "predictors"));
    schema.atoms.push_back(std::move(atom));
  }

  for (const auto& rec : read_records(dir / "modules.tsv"))
    schema.modules.push_back({rec.id, split_list(field(rec, "atoms")), field(rec, "service")});

  const auto services_path = (dir / "services.tsv").string();
  for (const auto& rec : read_records(dir / "services.tsv")) {
    Service svc;
    svc.id = rec.id;
    const auto dir_value = field(rec, "direction");
    if (dir_value == "inbound")
      svc.direction = Direction::Inbound;
    else if (dir_value == "outbound")
      svc.direction = Direction::Outbound;
    else
      throw ParseError(services_path, rec.line, "direction must be inbound or outbound");
    svc.modules = split_list(field(rec, "modules"));
    schema.services.push_back(std::move(svc));
  }
  return schema;
}

void save_schema(const Schema& schema, const std::filesystem::path& dir) {
  {
    auto out = detail::open_output(dir / "keywords.tsv");
    for (const auto& kw : schema.keywords) out << kw.name << '\n';
  }
  {
    auto out = detail::open_output(dir / "atoms.tsv");
    for (const auto& a : schema.atoms) {
      out << a.id << "\tkind=" << (a.kind == AtomKind::RegEx ? "regex" : "ml")
          << "\tkeyword=" << a.keyword
          << "\ttranscriber=" << (a.transcriber == Transcriber::Internal ? "internal" : "external")
          << "\tservice=" << a.service;
      if (a.kind == AtomKind::RegEx) {
        out << "\tpattern=" << a.pattern;
      } else {
        out << "\tmodel=" << a.model << "\tparameters=" << join(a.parameters, ',')
            << "\tpredictors=" << join(a.predictors, ',');
      }
      out << '\n';
    }
  }
  {
    auto out = detail::open_output(dir / "modules.tsv");
    for (const auto& m : schema.modules)
      out << m.id << "\tservice=" << m.service << "\tatoms=" << join(m.atoms, ',') << '\n';
  }
  {
    auto out = detail::open_output(dir / "services.tsv");
    for (const auto& s : schema.services)
      out << s.id << "\tdirection=" << (s.direction == Direction::Inbound ? "inbound" : "outbound")
          << "\tmodules=" << join(s.modules, ',') << '\n';
  }
}

ValidationReport validate_schema(const Schema& schema) {
  ValidationReport report;
  auto add = [&](const std::string& entity, const std::string& rule, const std::string& msg) {
    report.push_back({entity, rule, msg});
  };

  std::set<std::string> keywords;
  for (const auto& kw : schema.keywords) {
    if (kw.name.empty())
      add("", "keyword-name", "keyword with empty name");
    else if (!keywords.insert(kw.name).second)
      add(kw.name, "keyword-unique", "keyword declared more than once");
  }

  std::map<std::string, const Service*> services;
  for (const auto& svc : schema.services)
    if (!services.emplace(svc.id, &svc).second)
      add(svc.id, "service-unique", "service declared more than once");

  std::map<std::string, const Atom*> atoms;
  for (const auto& atom : schema.atoms) {
    if (!atoms.emplace(atom.id, &atom).second)
      add(atom.id, "atom-unique", "atom declared more than once");
    if (atom.keyword.empty())
      add(atom.id, "atom-keyword", "atom does not determine a keyword");
    else if (!keywords.count(atom.keyword))
      add(atom.id, "dangling-reference", "atom references unknown keyword '" + atom.keyword + "'");
    if (!atom.service.empty() && !services.count(atom.service))
      add(atom.id, "dangling-reference", "atom references unknown service '" + atom.service + "'");
    if (atom.kind == AtomKind::RegEx) {
      if (atom.pattern.empty()) add(atom.id, "atom-payload", "RegEx atom without a pattern");
      if (!atom.model.empty() || !atom.parameters.empty() || !atom.predictors.empty())
        add(atom.id, "atom-payload", "RegEx atom carries ML payload fields");
    } else {
      if (atom.model.empty()) add(atom.id, "atom-payload", "ML atom without a model reference");
      if (!atom.pattern.empty()) add(atom.id, "atom-payload", "ML atom carries a pattern");
    }
  }

  std::map<std::string, const TagModule*> modules;
  for (const auto& mod : schema.modules) {
    if (!modules.emplace(mod.id, &mod).second)
      add(mod.id, "module-unique", "module declared more than once");
    if (!mod.service.empty() && !services.count(mod.service))
      add(mod.id, "dangling-reference", "module references unknown service '" + mod.service + "'");
    std::set<std::string> atom_services;
    std::set<Transcriber> transcribers;
    for (const auto& atom_id : mod.atoms) {
      const auto it = atoms.find(atom_id);
      if (it == atoms.end()) {
        add(mod.id, "dangling-reference", "module references unknown atom '" + atom_id + "'");
        continue;
      }
      atom_services.insert(it->second->service.empty() ? mod.service : it->second->service);
      transcribers.insert(it->second->transcriber);
    }
    if (!mod.service.empty()) atom_services.insert(mod.service);
    if (atom_services.size() > 1)
      add(mod.id, "module-homogeneity", "module atoms span more than one service");
    if (transcribers.size() > 1)
      add(mod.id, "module-homogeneity", "module atoms target more than one transcriber");
  }

  for (const auto& svc : schema.services)
    for (const auto& mod_id : svc.modules) {
      const auto it = modules.find(mod_id);
      if (it == modules.end())
        add(svc.id, "dangling-reference", "service references unknown module '" + mod_id + "'");
      else if (!it->second->service.empty() && it->second->service != svc.id)
        add(mod_id, "module-homogeneity", "module listed under service '" + svc.id +
                                              "' but declared for '" + it->second->service + "'");
    }
  return report;
}

}  // namespace convtag::corpus
