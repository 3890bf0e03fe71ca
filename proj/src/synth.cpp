#include "convtag/synth.hpp"

#include <map>
#include <random>
#include <sstream>

#include "convtag/error.hpp"

namespace convtag::synth {

namespace {

struct KeywordSpec {
  const char* name;
  std::vector<std::string> variants;
  const char* pattern;
};

const std::vector<KeywordSpec>& specs() {
  static const std::vector<KeywordSpec> s = {
      {"age", {"potrebbe indicarmi anno nascita compiuto"}, ".*(nascita|anno).*"},
      {"call_permission", {"mi concede il permesso per una breve intervista"}, ".*(permesso|intervista).*"},
      {"duration_info", {"durata prevista trenta secondi velocissimi"}, ".*(durata|secondi).*"},
      {"family_unit", {"quante persone vivono nel nucleo familiare convivente"}, ".*(nucleo|familiare).*"},
      {"greeting_final", {"la ringrazio arrivederci cordiali saluti"}, ".*(arrivederci|saluti).*"},
      {"greeting_initial", {"pronto buongiorno chiamo dalla societa ricerche"}, ".*(buongiorno|ricerche).*"},
      {"person_identity", {"parlo con la signora rossi titolare contratto"}, ".*(signora|titolare).*"},
      {"privacy", {"dati trattati forma anonima informativa privacy"}, ".*(anonima|privacy).*"},
      {"profession", {"qual e la sua professione attuale impiegato pensionato"}, ".*(professione|impiegato).*"},
      {"question_1", {"abitudini acquisto supermercato negozi alimentari"}, ".*(supermercato|negozi).*"},
      {"question_2", {"utilizzo trasporti pubblici autobus metropolitana"}, ".*(trasporti|autobus).*"},
      {"question_3", {"preferenze vacanze estive mare montagna"}, ".*(vacanze|montagna).*"},
  };
  return s;
}

// Order in which the keywords occur during a call.
const std::vector<std::string>& call_flow() {
  static const std::vector<std::string> flow = {
      "greeting_initial", "person_identity", "call_permission", "duration_info",
      "privacy",          "question_1",      "question_2",      "question_3",
      "age",              "profession",      "family_unit",     "greeting_final"};
  return flow;
}

// Uniform draws by plain modular arithmetic on mt19937_64 output, so the
// corpus is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

void append_words(std::vector<std::string>& out, const std::string& phrase) {
  std::istringstream in(phrase);
  for (std::string w; in >> w;) out.push_back(w);
}

}  // namespace

const std::vector<std::string>& keywords() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& s : specs()) out.emplace_back(s.name);
    return out;
  }();
  return k;
}

const std::vector<std::string>& templates(const std::string& keyword) {
  for (const auto& s : specs())
    if (keyword == s.name) return s.variants;
  throw Error(ErrorCode::InvalidArgument, "unknown synthetic keyword '" + keyword + "'");
}

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {
      "allora",   "dunque",  "ecco",     "certo",     "capito",   "benissimo", "esatto",   "attenda",
      "momento",  "prego",   "scusi",    "senta",     "guardi",   "appunto",   "comunque", "magari",
      "infatti",  "chiaro",  "perfetto", "giusto",    "tranquillo", "linea",   "ripeto",   "aspetti",
      "vero",     "risposta", "ascolti", "piano",     "volta",    "solito",    "tempo",    "oggi",
      "domani",   "settimana", "mattina", "pomeriggio", "sera",   "casa",      "ufficio",  "problema",
      "cosa",     "parte",   "modo",     "caso",      "punto",    "numero",    "giorno",   "mese",
      "posto",    "strada",  "citta",    "paese",     "esempio",  "davvero",   "proprio",  "sicuro",
      "appena",   "ormai",   "subito",   "pure"};
  return words;
}

corpus::Corpus generate_corpus(const SynthOptions& options) {
  if (options.sessions == 0 || options.segments_per_session == 0)
    throw Error(ErrorCode::InvalidArgument, "synthetic corpus needs sessions and segments");
  if (options.noise < 0 || options.noise >= 0.5 || options.keyword_rate < 0 || options.keyword_rate > 1)
    throw Error(ErrorCode::InvalidArgument, "noise must lie in [0,0.5) and keyword_rate in [0,1]");
  Rng rng(options.seed);
  const auto& kw = keywords();
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < kw.size(); ++i) column[kw[i]] = i;
  const auto& filler = filler_words();
  std::vector<std::string> vocab = filler;
  for (const auto& k : kw) append_words(vocab, templates(k).front());
  const std::size_t per = options.segments_per_session;

  std::vector<corpus::Segment> segments;
  for (std::size_t s = 0; s < options.sessions; ++s) {
    std::vector<std::string> present;
    for (const auto& k : call_flow())
      if (rng.unit() < options.keyword_rate) present.push_back(k);

    // Spread the present keywords over the call in flow order.
    std::vector<std::vector<std::string>> slots(per);
    for (std::size_t i = 0; i < present.size(); ++i) slots[i * per / present.size()].push_back(present[i]);

    for (std::size_t g = 0; g < per; ++g) {
      corpus::Segment seg;
      seg.session_id = "call" + std::to_string(s + 1);
      seg.segment_id = seg.session_id + "_" + std::to_string(g + 1);
      seg.labels.assign(kw.size(), 0);
      std::vector<std::string> words;
      const std::size_t lead = 2 + rng.below(5);
      for (std::size_t i = 0; i < lead; ++i) words.push_back(filler[rng.below(filler.size())]);
      for (const auto& k : slots[g]) {
        const auto& variants = templates(k);
        append_words(words, variants[rng.below(variants.size())]);
        seg.labels[column[k]] = 1;
        const std::size_t gap = rng.below(3);
        for (std::size_t i = 0; i < gap; ++i) words.push_back(filler[rng.below(filler.size())]);
      }
      const std::size_t tail = rng.below(5);
      for (std::size_t i = 0; i < tail; ++i) words.push_back(filler[rng.below(filler.size())]);
      // Noise tokens come from the whole vocabulary, keyword words included,
      // and land anywhere (phrase interiors too). They make up `noise` of the
      // final tokens.
      const double insert = options.noise / (1.0 - options.noise);
      std::vector<std::string> noisy;
      for (auto& w : words) {
        if (rng.unit() < insert) noisy.push_back(vocab[rng.below(vocab.size())]);
        noisy.push_back(std::move(w));
      }
      for (std::size_t i = 0; i < noisy.size(); ++i) seg.text += (i ? " " : "") + noisy[i];
      segments.push_back(std::move(seg));
    }
  }
  return corpus::Corpus(kw, std::move(segments));
}

std::vector<std::pair<std::string, std::string>> regex_atoms() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : specs()) out.emplace_back(s.name, s.pattern);
  return out;
}

std::string rules_text() {
  return "# name\tseverity\texpression\n"
         "identity_check\t1\tage AND person_identity\n"
         "opening_check\t2\tgreeting_initial AND call_permission\n"
         "survey_questions\t3\tquestion_1 AND question_2 AND question_3\n";
}

}  // namespace convtag::synth
