#include "strfix/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace strfix {

using nlohmann::json;

SemanticTypeList SemanticTypeList::defaults() {
  return {{"name", "country", "city", "state", "region", "language", "nationality", "currency",
           "company", "day", "month", "weekday", "gender", "continent", "team", "county", "color",
           "brand", "symbol", "category"}};
}

SemanticTypeList SemanticTypeList::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open type list " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  SemanticTypeList list;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    for (const auto& t : json::parse(text)) list.types.push_back(t.get<std::string>());
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
      if (!line.empty() && line[0] != '#') list.types.push_back(line);
    }
  }
  list.validate();
  return list;
}

bool SemanticTypeList::contains(std::string_view type) const {
  return std::find(types.begin(), types.end(), type) != types.end();
}

void SemanticTypeList::validate() const {
  if (types.empty()) throw std::invalid_argument("semantic type list is empty");
  std::set<std::string> seen;
  for (const auto& t : types) {
    if (!seen.insert(t).second) throw std::invalid_argument("duplicate semantic type " + t);
  }
}

namespace {

bool is_ascii_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string lowered(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

DictionaryOracle::DictionaryOracle(std::vector<Gazetteer> gazetteers, std::size_t batch)
    : gazetteers_(std::move(gazetteers)), batch_(batch == 0 ? 1 : batch) {
  for (const auto& g : gazetteers_) {
    for (const auto& c : g.canonical) {
      if (!c.empty()) entries_.push_back({g.type, c, lowered(c), c, true});
    }
    for (const auto& [alias, target] : g.aliases) {
      if (!alias.empty()) entries_.push_back({g.type, alias, lowered(alias), target, false});
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (a.surface.size() != b.surface.size()) return a.surface.size() > b.surface.size();
    return a.case_sensitive && !b.case_sensitive;
  });
}

DictionaryOracle DictionaryOracle::from_directory(const std::string& directory, std::size_t batch) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Gazetteer> gazetteers;
  for (const auto& path : files) {
    std::ifstream in(path);
    json doc = json::parse(in);
    Gazetteer g;
    g.type = doc.at("type").get<std::string>();
    g.canonical = doc.value("canonical", std::vector<std::string>{});
    const json aliases = doc.value("aliases", json::object());
    for (const auto& [alias, target] : aliases.items()) {
      g.aliases[lowered(alias)] = target.get<std::string>();
    }
    gazetteers.push_back(std::move(g));
  }
  return DictionaryOracle(std::move(gazetteers), batch);
}

std::vector<std::string> DictionaryOracle::supported_types() const {
  std::vector<std::string> out;
  for (const auto& g : gazetteers_) out.push_back(g.type);
  return out;
}

std::vector<std::string> DictionaryOracle::annotate(std::span<const std::string> values,
                                                    const SemanticTypeList& types) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    const std::string low = lowered(v);
    std::string annotated;
    std::size_t p = 0;
    while (p < v.size()) {
      const Entry* hit = nullptr;
      if (p == 0 || !is_ascii_letter(v[p - 1])) {
        for (const auto& e : entries_) {
          const std::size_t len = e.surface.size();
          if (p + len > v.size()) continue;
          if (p + len < v.size() && is_ascii_letter(v[p + len])) continue;
          const bool same = e.case_sensitive ? v.compare(p, len, e.surface) == 0
                                             : low.compare(p, len, e.lowered) == 0;
          if (same && types.contains(e.type)) {
            hit = &e;
            break;
          }
        }
      }
      if (hit) {
        annotated += "{" + hit->type + "(" + hit->canonical + ")}";
        p += hit->surface.size();
      } else {
        annotated += v[p++];
      }
    }
    out.push_back(std::move(annotated));
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>>& few_shot_examples() {
  static const std::vector<std::pair<std::string, std::string>> kExamples = {
      {"US-123", "{country(US)}-123"},
      {"u.k.-392", "{country(UK)}-392"},
      {"dark green 2", "{color(dark green)} 2"},
      {"bleu phone 3", "{color(blue)} phone 3"},
      {"Q3-2001", "Q3-2001"},
  };
  return kExamples;
}

namespace {

struct AnnotationPiece {
  bool span = false;
  std::string text;  // literal text, or the payload of a span
  std::string type;
};

std::vector<AnnotationPiece> split_annotation(const std::string& s) {
  std::vector<AnnotationPiece> pieces(1);
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '{') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == ' ')) ++j;
      const std::size_t close = j < s.size() && s[j] == '(' ? s.find(")}", j + 1) : std::string::npos;
      if (j > i + 1 && close != std::string::npos) {
        AnnotationPiece span;
        span.span = true;
        span.type = s.substr(i + 1, j - i - 1);
        span.text = s.substr(j + 1, close - j - 1);
        pieces.push_back(std::move(span));
        pieces.emplace_back();
        i = close + 2;
        continue;
      }
    }
    pieces.back().text += s[i++];
  }
  return pieces;
}

}  // namespace

std::optional<std::vector<MaskSpan>> parse_annotation(const std::string& raw, const std::string& annotated,
                                                      const SemanticTypeList& types) {
  const auto pieces = split_annotation(annotated);
  // pieces alternate literal, span, literal, ..., literal.
  std::vector<MaskSpan> spans;
  const std::string& head = pieces.front().text;
  if (raw.compare(0, head.size(), head) != 0) return std::nullopt;
  std::size_t pos = head.size();
  for (std::size_t k = 1; k + 1 < pieces.size(); k += 2) {
    const auto& span = pieces[k];
    const auto& next = pieces[k + 1].text;
    const bool last = k + 2 == pieces.size();
    if (span.text.empty() || !types.contains(span.type)) return std::nullopt;
    std::size_t found = std::string::npos;
    if (last) {
      if (raw.size() < pos + 1 + next.size()) return std::nullopt;
      if (raw.compare(raw.size() - next.size(), next.size(), next) != 0) return std::nullopt;
      found = raw.size() - next.size();
    } else {
      if (next.empty()) return std::nullopt;
      found = raw.find(next, pos + 1);
      if (found == std::string::npos) return std::nullopt;
    }
    MaskSpan m;
    m.type = span.type;
    m.suggested = span.text;
    m.begin = pos;
    m.end = found;
    m.original = raw.substr(pos, found - pos);
    spans.push_back(std::move(m));
    pos = found + next.size();
  }
  if (pos != raw.size()) return std::nullopt;
  return spans;
}

MaskedColumn identity_mask(std::span<const std::string> values) {
  MaskedColumn out;
  out.raw_values.assign(values.begin(), values.end());
  out.masked_values = out.raw_values;
  out.mask_table.resize(values.size());
  return out;
}

MaskedColumn abstract_column(std::span<const std::string> values, const SemanticTypeList& types,
                             SemanticOracle& oracle) {
  MaskedColumn out = identity_mask(values);
  std::vector<std::optional<std::vector<MaskSpan>>> spans(values.size());
  std::size_t malformed = 0;
  const std::size_t batch = std::max<std::size_t>(1, oracle.max_batch());
  for (std::size_t start = 0; start < values.size(); start += batch) {
    const auto chunk = values.subspan(start, std::min(batch, values.size() - start));
    std::vector<std::string> annotated;
    try {
      annotated = oracle.annotate(chunk, types);
    } catch (const OracleError& e) {
      MaskedColumn plain = identity_mask(values);
      plain.warnings.push_back(std::string("semantic oracle unavailable, masking disabled: ") + e.what());
      return plain;
    }
    if (annotated.size() != chunk.size()) {
      malformed += chunk.size();
      continue;
    }
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      spans[start + i] = parse_annotation(chunk[i], annotated[i], types);
      if (!spans[start + i]) ++malformed;
    }
  }
  if (malformed) {
    out.warnings.push_back(std::to_string(malformed) + " value(s) had malformed oracle output and were left unmasked");
  }

  // Granularity guard: a column where every value is one whole mask of a
  // single type carries no syntax to learn.
  std::size_t nonempty = 0, whole = 0;
  std::set<std::string> whole_types;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].empty()) continue;
    ++nonempty;
    const auto& s = spans[i];
    if (s && s->size() == 1 && s->front().begin == 0 && s->front().end == values[i].size()) {
      ++whole;
      whole_types.insert(s->front().type);
    }
  }
  if (nonempty > 0 && whole == nonempty && whole_types.size() == 1) {
    out.warnings.push_back("every value is a single '" + *whole_types.begin() +
                           "' mask; masking skipped for granularity");
    out.skipped = true;
    return out;
  }

  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!spans[i] || spans[i]->empty()) continue;
    std::string masked;
    std::size_t pos = 0;
    for (const auto& s : *spans[i]) {
      MaskEntry e;
      e.token = out.alphabet.token_for(s.type);
      e.type = s.type;
      e.original = s.original;
      e.suggested = s.suggested;
      e.begin = s.begin;
      e.end = s.end;
      masked += values[i].substr(pos, s.begin - pos);
      masked += "{" + s.type + "(" + s.suggested + ")}";
      pos = s.end;
      out.mask_table[i].push_back(std::move(e));
    }
    masked += values[i].substr(pos);
    out.masked_values[i] = std::move(masked);
  }
  return out;
}

std::vector<SymbolString> to_pattern_alphabet(const MaskedColumn& column) {
  std::vector<SymbolString> out;
  out.reserve(column.raw_values.size());
  for (std::size_t i = 0; i < column.raw_values.size(); ++i) {
    const auto& raw = column.raw_values[i];
    SymbolString symbols;
    std::size_t pos = 0;
    for (const auto& e : column.mask_table[i]) {
      symbols += decode_utf8(std::string_view(raw).substr(pos, e.begin - pos));
      symbols.push_back(e.token);
      pos = e.end;
    }
    symbols += decode_utf8(std::string_view(raw).substr(pos));
    out.push_back(std::move(symbols));
  }
  return out;
}

std::map<Symbol, std::string> frequent_mask_fills(const MaskedColumn& column) {
  std::map<Symbol, std::map<std::string, std::size_t>> counts;
  for (const auto& row : column.mask_table) {
    for (const auto& e : row) counts[e.token][e.original] += 1;
  }
  std::map<Symbol, std::string> out;
  for (const auto& [token, originals] : counts) {
    std::size_t best = 0;
    for (const auto& [text, n] : originals) {
      if (n > best) {
        best = n;
        out[token] = text;
      }
    }
  }
  return out;
}

MaskResolution concretize_masks(std::span<const TracedSymbol> repaired, SymbolView source,
                                std::span<const MaskEntry> row_entries, MaskMode mode,
                                const std::map<Symbol, std::string>& fallback) {
  MaskResolution result;
  std::string text;
  for (const auto& t : repaired) {
    if (!is_mask(t.symbol)) {
      text += encode_utf8(SymbolView(&t.symbol, 1));
      continue;
    }
    if (t.source && *t.source < source.size() && source[*t.source] == t.symbol) {
      const auto k = static_cast<std::size_t>(
          std::count_if(source.begin(), source.begin() + static_cast<std::ptrdiff_t>(*t.source), is_mask));
      if (k < row_entries.size()) {
        const auto& e = row_entries[k];
        text += mode == MaskMode::suggest ? e.suggested : e.original;
        continue;
      }
    }
    if (t.fill) {
      text += *t.fill;
      continue;
    }
    auto it = fallback.find(t.symbol);
    if (it == fallback.end()) {
      result.reason = "unresolved-mask";
      return result;
    }
    text += it->second;
  }
  result.text = std::move(text);
  return result;
}

}  // namespace strfix
