#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "strfix/symbols.hpp"

namespace strfix {

struct SemanticTypeList {
  std::vector<std::string> types;

  /// name, country, city, state, region, language, nationality, currency,
  /// company, day, month, weekday, gender, continent, team, county, color,
  /// brand, symbol, category.
  static SemanticTypeList defaults();
  /// One type per line, or a JSON array of strings.
  static SemanticTypeList load(const std::string& path);
  bool contains(std::string_view type) const;
  /// Throws std::invalid_argument on duplicates or an empty list.
  void validate() const;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rewrites semantic substrings of each value as {type(suggestion)}. The
/// i-th output belongs to the i-th input.
class SemanticOracle {
 public:
  virtual ~SemanticOracle() = default;
  virtual std::size_t max_batch() const = 0;
  virtual std::vector<std::string> supported_types() const = 0;
  /// Throws OracleError when the backend cannot be reached.
  virtual std::vector<std::string> annotate(std::span<const std::string> values,
                                            const SemanticTypeList& types) = 0;
};

struct Gazetteer {
  std::string type;
  std::vector<std::string> canonical;
  /// Lower-cased alias -> canonical form.
  std::map<std::string, std::string> aliases;
};

/// Deterministic backend over per-type gazetteers. Canonical forms match
/// case-sensitively and map to themselves; aliases match case-insensitively.
/// Matches must not touch a letter on either side; the longest match wins.
class DictionaryOracle : public SemanticOracle {
 public:
  explicit DictionaryOracle(std::vector<Gazetteer> gazetteers, std::size_t batch = 100);
  /// Loads every *.json file in `directory`.
  static DictionaryOracle from_directory(const std::string& directory, std::size_t batch = 100);

  std::size_t max_batch() const override { return batch_; }
  std::vector<std::string> supported_types() const override;
  std::vector<std::string> annotate(std::span<const std::string> values,
                                    const SemanticTypeList& types) override;

 private:
  struct Entry {
    std::string type;
    std::string surface;
    std::string lowered;
    std::string canonical;
    bool case_sensitive;
  };
  std::vector<Gazetteer> gazetteers_;
  std::vector<Entry> entries_;
  std::size_t batch_;
};

struct HttpOracleConfig {
  std::string url;
  std::string api_key;
  std::string model = "gpt-3.5-turbo";
  std::size_t batch = 100;
  int timeout_seconds = 60;

  /// Reads ORACLE_URL, ORACLE_KEY and ORACLE_MODEL.
  static std::optional<HttpOracleConfig> from_env();
};

/// Chat-completion backend. See docs/oracle_protocol.md for the wire format.
class HttpOracle : public SemanticOracle {
 public:
  explicit HttpOracle(HttpOracleConfig config);
  std::size_t max_batch() const override { return config_.batch; }
  std::vector<std::string> supported_types() const override { return {}; }
  std::vector<std::string> annotate(std::span<const std::string> values,
                                    const SemanticTypeList& types) override;

  /// The request body sent for one batch.
  std::string request_body(std::span<const std::string> values, const SemanticTypeList& types) const;
  /// Extracts one annotation per value from a response body; throws
  /// OracleError when the body does not carry exactly `expected` strings.
  static std::vector<std::string> parse_response(const std::string& body, std::size_t expected);

 private:
  HttpOracleConfig config_;
  std::mutex budget_;
};

/// Few-shot pairs shown to the chat backend.
const std::vector<std::pair<std::string, std::string>>& few_shot_examples();

struct MaskSpan {
  std::string type;
  std::string original;
  std::string suggested;
  std::size_t begin = 0;  // byte offsets into the raw value
  std::size_t end = 0;
};

/// Parses annotated output against the raw value. Returns nullopt when the
/// output is not the raw value with zero or more non-overlapping spans
/// rewritten as {type(payload)}, or when a type is not in `types`.
std::optional<std::vector<MaskSpan>> parse_annotation(const std::string& raw, const std::string& annotated,
                                                      const SemanticTypeList& types);

struct MaskEntry {
  Symbol token = 0;
  std::string type;
  std::string original;
  std::string suggested;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct MaskedColumn {
  std::vector<std::string> raw_values;
  /// Oracle form, e.g. "{country(US)}-123".
  std::vector<std::string> masked_values;
  std::vector<std::vector<MaskEntry>> mask_table;
  /// One token per semantic type in this column.
  MaskAlphabet alphabet;
  std::vector<std::string> warnings;
  bool skipped = false;
};

/// Identity masking: no spans, raw values kept.
MaskedColumn identity_mask(std::span<const std::string> values);

MaskedColumn abstract_column(std::span<const std::string> values, const SemanticTypeList& types,
                             SemanticOracle& oracle);

/// Mask spans collapsed to their atomic tokens.
std::vector<SymbolString> to_pattern_alphabet(const MaskedColumn& column);

enum class MaskMode { suggest, reuse_only };

/// One symbol of a repaired value with its provenance.
struct TracedSymbol {
  Symbol symbol = 0;
  /// Index in the source symbol string, when the symbol was carried over.
  std::optional<std::size_t> source;
  /// Concrete text chosen for an inserted or substituted mask.
  std::optional<std::string> fill;
};

struct MaskResolution {
  std::optional<std::string> text;
  std::string reason;
};

/// Most frequent original substring per mask token across a column.
std::map<Symbol, std::string> frequent_mask_fills(const MaskedColumn& column);

/// Turns a repaired symbol string back into raw text. Carried-over masks use
/// the row's entry (suggestion or original by `mode`); other masks use their
/// fill, then `fallback`.
MaskResolution concretize_masks(std::span<const TracedSymbol> repaired, SymbolView source,
                                std::span<const MaskEntry> row_entries, MaskMode mode,
                                const std::map<Symbol, std::string>& fallback);

}  // namespace strfix
