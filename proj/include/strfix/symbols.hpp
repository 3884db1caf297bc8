#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace strfix {

/// One symbol of the pattern alphabet: a Unicode code point, or a mask token
/// drawn from a reserved private-use range.
using Symbol = char32_t;
using SymbolString = std::u32string;
using SymbolView = std::u32string_view;

std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

// Mask tokens live in Supplementary Private Use Area-A. Raw input never
// produces them because decode_utf8 maps that range to U+FFFD.
inline constexpr Symbol kMaskBase = 0xF0000;
inline constexpr Symbol kMaskLimit = 0xF0400;

constexpr bool is_mask(Symbol s) { return s >= kMaskBase && s < kMaskLimit; }
constexpr Symbol mask_symbol(std::size_t index) {
  return static_cast<Symbol>(kMaskBase + index);
}
constexpr std::size_t mask_index(Symbol s) { return s - kMaskBase; }

/// Semantic type names for the mask tokens of one column, by mask index.
class MaskAlphabet {
 public:
  /// Returns the token for `type`, allocating the next one on first use.
  Symbol token_for(const std::string& type);
  std::string type_of(Symbol token) const;
  bool contains(const std::string& type) const;
  std::size_t size() const { return types_.size(); }
  const std::vector<std::string>& types() const { return types_; }

 private:
  std::vector<std::string> types_;
};

enum class CharClass : std::uint8_t {
  digit,
  lower,
  upper,
  letter,
  alnum,
  space,
  alnum_space,
  binary01,
};

inline constexpr CharClass kAllClasses[] = {
    CharClass::digit, CharClass::lower,       CharClass::upper,
    CharClass::letter, CharClass::alnum,      CharClass::space,
    CharClass::alnum_space, CharClass::binary01,
};

constexpr bool is_digit(Symbol s) { return s >= U'0' && s <= U'9'; }
constexpr bool is_lower(Symbol s) { return s >= U'a' && s <= U'z'; }
constexpr bool is_upper(Symbol s) { return s >= U'A' && s <= U'Z'; }
constexpr bool is_letter(Symbol s) { return is_lower(s) || is_upper(s); }
constexpr bool is_alnum(Symbol s) { return is_letter(s) || is_digit(s); }

bool class_contains(CharClass cls, Symbol s);
/// Canonical text form, e.g. "[0-9]".
std::string_view class_syntax(CharClass cls);
/// Members in code point order.
std::vector<Symbol> class_members(CharClass cls);
std::size_t class_size(CharClass cls);
/// True when every member of `inner` is a member of `outer`.
bool class_subsumes(CharClass outer, CharClass inner);
/// Smallest class containing both, if any.
bool join_classes(CharClass a, CharClass b, CharClass& out);

/// Renders a symbol string for humans: masks become "{type}".
std::string render_symbols(SymbolView text, const MaskAlphabet* alphabet);

}  // namespace strfix
