// Snowball Italian stemmer.
//
// Works on code points. Inputs come from `normalize`, so they are lowercase
// and contain no apostrophes; the elision step of the algorithm therefore
// never fires and is not implemented.

#include <array>
#include <string>
#include <string_view>

#include "convtag/textprep.hpp"
#include "convtag/utf8.hpp"

namespace convtag::textprep {

namespace {

using Str = std::u32string;
using View = std::u32string_view;

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'à': case U'è': case U'ì': case U'ò': case U'ù':
      return true;
    default:
      return false;
  }
}

bool is_aeio(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o':
    case U'à': case U'è': case U'ì': case U'ò':
      return true;
    default:
      return false;
  }
}

struct Suffix {
  View text;
  int action;
};

constexpr std::array<View, 37> kPronouns = {
    U"la",   U"cela", U"gliela", U"mela", U"tela",   U"vela", U"le",   U"cele",
    U"gliele", U"mele", U"tele", U"vele",  U"ne",   U"cene", U"gliene", U"mene",
    U"sene", U"tene", U"vene",  U"ci",   U"li",   U"celi", U"glieli", U"meli",
    U"teli", U"veli", U"gli",   U"mi",   U"si",   U"ti",   U"vi",   U"lo",
    U"celo", U"glielo", U"melo", U"telo", U"velo"};

// action 1: remove the pronoun; action 2: replace it with "e"
constexpr std::array<Suffix, 5> kPronounHosts = {
    {{U"ando", 1}, {U"endo", 1}, {U"ar", 2}, {U"er", 2}, {U"ir", 2}}};

enum StandardAction {
  kDelete = 1,
  kDeleteIc = 2,
  kLog = 3,
  kU = 4,
  kEnte = 5,
  kDeleteRv = 6,
  kAmente = 7,
  kIta = 8,
  kIv = 9,
};

constexpr std::array<Suffix, 51> kStandard = {{
    {U"ica", kDelete},     {U"logia", kLog},      {U"osa", kDelete},     {U"ista", kDelete},
    {U"iva", kIv},         {U"anza", kDelete},    {U"enza", kEnte},      {U"ice", kDelete},
    {U"atrice", kDelete},  {U"iche", kDelete},    {U"logie", kLog},      {U"abile", kDelete},
    {U"ibile", kDelete},   {U"usione", kU},       {U"azione", kDeleteIc}, {U"uzione", kU},
    {U"atore", kDeleteIc}, {U"ose", kDelete},     {U"ante", kDelete},    {U"mente", kDelete},
    {U"amente", kAmente},  {U"iste", kDelete},    {U"ive", kIv},         {U"anze", kDelete},
    {U"enze", kEnte},      {U"ici", kDelete},     {U"atrici", kDelete},  {U"ichi", kDelete},
    {U"abili", kDelete},   {U"ibili", kDelete},   {U"ismi", kDelete},    {U"usioni", kU},
    {U"azioni", kDeleteIc}, {U"uzioni", kU},      {U"atori", kDeleteIc}, {U"osi", kDelete},
    {U"anti", kDelete},    {U"amenti", kDeleteRv}, {U"imenti", kDeleteRv}, {U"isti", kDelete},
    {U"ivi", kIv},         {U"ico", kDelete},     {U"ismo", kDelete},    {U"oso", kDelete},
    {U"amento", kDeleteRv}, {U"imento", kDeleteRv}, {U"ivo", kIv},       {U"ità", kIta},
    {U"istà", kDelete},    {U"istè", kDelete},    {U"istì", kDelete},
}};

constexpr std::array<View, 4> kAmenteTail = {U"ic", U"abil", U"os", U"iv"};
constexpr std::array<View, 3> kItaTail = {U"ic", U"abil", U"iv"};

constexpr std::array<View, 87> kVerbSuffixes = {
    U"isca",   U"enda",   U"ata",    U"ita",    U"uta",    U"ava",    U"eva",    U"iva",
    U"erebbe", U"irebbe", U"isce",   U"ende",   U"are",    U"ere",    U"ire",    U"asse",
    U"ate",    U"avate",  U"evate",  U"ivate",  U"ete",    U"erete",  U"irete",  U"ite",
    U"ereste", U"ireste", U"ute",    U"erai",   U"irai",   U"isci",   U"endi",   U"erei",
    U"irei",   U"assi",   U"ati",    U"iti",    U"eresti", U"iresti", U"uti",    U"avi",
    U"evi",    U"ivi",    U"isco",   U"ando",   U"endo",   U"Yamo",   U"iamo",   U"avamo",
    U"evamo",  U"ivamo",  U"eremo",  U"iremo",  U"assimo", U"ammo",   U"emmo",   U"eremmo",
    U"iremmo", U"immo",   U"ano",    U"iscano", U"avano",  U"evano",  U"ivano",  U"eranno",
    U"iranno", U"ono",    U"iscono", U"arono",  U"erono",  U"irono",  U"erebbero", U"irebbero",
    U"assero", U"essero", U"issero", U"ato",    U"ito",    U"uto",    U"avo",    U"evo",
    U"ivo",    U"ar",     U"ir",     U"erà",    U"irà",    U"erò",    U"irò"};

bool ends_with(View s, View suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Longest entry that is a suffix of s[floor:].
template <typename Range, typename Key>
const auto* longest_suffix(View s, const Range& entries, Key key, std::size_t floor = 0) {
  const typename Range::value_type* best = nullptr;
  const View region = s.substr(std::min(floor, s.size()));
  for (const auto& e : entries) {
    const View text = key(e);
    if (ends_with(region, text) && (!best || text.size() > key(*best).size())) best = &e;
  }
  return best;
}

class ItalianStemmer {
 public:
  explicit ItalianStemmer(Str word) : w_(std::move(word)) {}

  Str run() {
    prelude();
    mark_regions();
    attached_pronoun();
    if (!standard_suffix()) verb_suffix();
    vowel_suffix();
    postlude();
    return w_;
  }

 private:
  void prelude() {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      switch (w_[i]) {
        case U'á': w_[i] = U'à'; break;
        case U'é': w_[i] = U'è'; break;
        case U'í': w_[i] = U'ì'; break;
        case U'ó': w_[i] = U'ò'; break;
        case U'ú': w_[i] = U'ù'; break;
        case U'q':
          if (i + 1 < w_.size() && w_[i + 1] == U'u') {
            w_[i + 1] = U'U';
            ++i;
          }
          break;
        default: break;
      }
    }
    // u or i between two vowels is treated as a consonant.
    for (std::size_t i = 0; i + 2 < w_.size(); ++i) {
      if (!is_vowel(w_[i]) || !is_vowel(w_[i + 2])) continue;
      if (w_[i + 1] == U'u')
        w_[i + 1] = U'U';
      else if (w_[i + 1] == U'i')
        w_[i + 1] = U'I';
    }
  }

  std::size_t next_vowel(std::size_t from) const {
    while (from < w_.size() && !is_vowel(w_[from])) ++from;
    return from;
  }

  std::size_t next_consonant(std::size_t from) const {
    while (from < w_.size() && is_vowel(w_[from])) ++from;
    return from;
  }

  void mark_regions() {
    const std::size_t n = w_.size();
    pv_ = p1_ = p2_ = n;

    if (n >= 2) {
      bool found = false;
      if (is_vowel(w_[0])) {
        if (!is_vowel(w_[1])) {
          const auto v = next_vowel(2);
          if (v < n) {
            pv_ = v + 1;
            found = true;
          }
        } else {
          const auto c = next_consonant(2);
          if (c < n) {
            pv_ = c + 1;
            found = true;
          }
        }
      }
      if (!found && View(w_).substr(0, 5) == U"divan") {
        pv_ = 5;
        found = true;
      }
      if (!found && !is_vowel(w_[0])) {
        if (!is_vowel(w_[1])) {
          const auto v = next_vowel(2);
          if (v < n) pv_ = v + 1;
        } else if (n > 2) {
          pv_ = 3;
        }
      }
    }

    const auto v1 = next_vowel(0);
    if (v1 >= n) return;
    const auto c1 = next_consonant(v1 + 1);
    if (c1 >= n) return;
    p1_ = c1 + 1;
    const auto v2 = next_vowel(p1_);
    if (v2 >= n) return;
    const auto c2 = next_consonant(v2 + 1);
    if (c2 >= n) return;
    p2_ = c2 + 1;
  }

  std::size_t len() const { return w_.size(); }
  void truncate(std::size_t n) { w_.resize(n); }

  void attached_pronoun() {
    const View* pron = longest_suffix(w_, kPronouns, [](View v) { return v; });
    if (!pron) return;
    const std::size_t pron_start = len() - pron->size();
    const View head = View(w_).substr(0, pron_start);
    const Suffix* host = longest_suffix(head, kPronounHosts, [](const Suffix& s) { return s.text; });
    if (!host) return;
    if (pron_start - host->text.size() < pv_) return;
    truncate(pron_start);
    if (host->action == 2) w_.push_back(U'e');
  }

  // Deletes `suffix` when it ends the word and starts at or after `region`.
  bool delete_if(View suffix, std::size_t region) {
    if (!ends_with(w_, suffix)) return false;
    const std::size_t start = len() - suffix.size();
    if (start < region) return false;
    truncate(start);
    return true;
  }

  bool standard_suffix() {
    const Suffix* hit = longest_suffix(w_, kStandard, [](const Suffix& s) { return s.text; });
    if (!hit) return false;
    const std::size_t start = len() - hit->text.size();
    auto replace_tail = [&](View with) {
      truncate(start);
      w_.append(with);
    };
    switch (hit->action) {
      case kDelete:
        if (start < p2_) return false;
        truncate(start);
        break;
      case kDeleteIc:
        if (start < p2_) return false;
        truncate(start);
        delete_if(U"ic", p2_);
        break;
      case kLog:
        if (start < p2_) return false;
        replace_tail(U"log");
        break;
      case kU:
        if (start < p2_) return false;
        replace_tail(U"u");
        break;
      case kEnte:
        if (start < p2_) return false;
        replace_tail(U"ente");
        break;
      case kDeleteRv:
        if (start < pv_) return false;
        truncate(start);
        break;
      case kAmente: {
        if (start < p1_) return false;
        truncate(start);
        const View* tail = longest_suffix(w_, kAmenteTail, [](View v) { return v; });
        if (tail && len() - tail->size() >= p2_) {
          const bool was_iv = *tail == U"iv";
          truncate(len() - tail->size());
          if (was_iv) delete_if(U"at", p2_);
        }
        break;
      }
      case kIta: {
        if (start < p2_) return false;
        truncate(start);
        const View* tail = longest_suffix(w_, kItaTail, [](View v) { return v; });
        if (tail && len() - tail->size() >= p2_) truncate(len() - tail->size());
        break;
      }
      case kIv:
        if (start < p2_) return false;
        truncate(start);
        if (delete_if(U"at", p2_)) delete_if(U"ic", p2_);
        break;
      default:
        return false;
    }
    return true;
  }

  void verb_suffix() {
    const View* hit = longest_suffix(w_, kVerbSuffixes, [](View v) { return v; }, pv_);
    if (hit) truncate(len() - hit->size());
  }

  void vowel_suffix() {
    if (len() > 0 && is_aeio(w_.back()) && len() - 1 >= pv_) {
      truncate(len() - 1);
      if (len() > 0 && w_.back() == U'i' && len() - 1 >= pv_) truncate(len() - 1);
    }
    if (len() >= 2 && w_.back() == U'h' && (w_[len() - 2] == U'c' || w_[len() - 2] == U'g') &&
        len() - 2 >= pv_)
      truncate(len() - 1);
  }

  void postlude() {
    for (auto& c : w_) {
      if (c == U'I')
        c = U'i';
      else if (c == U'U')
        c = U'u';
    }
  }

  Str w_;
  std::size_t pv_ = 0, p1_ = 0, p2_ = 0;
};

}  // namespace

std::string stem_italian(std::string_view word) {
  return utf8::encode(ItalianStemmer(utf8::decode(word)).run());
}

}  // namespace convtag::textprep
