#include "strfix/symbols.hpp"

#include <algorithm>
#include <stdexcept>

namespace strfix {

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    char32_t cp = 0;
    std::size_t extra = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead & 0xF0) == 0xE0) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead & 0xF8) == 0xF0) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= text.size()) {
        ok = false;
        break;
      }
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (is_mask(cp)) cp = 0xFFFD;
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

Symbol MaskAlphabet::token_for(const std::string& type) {
  auto it = std::find(types_.begin(), types_.end(), type);
  if (it != types_.end()) {
    return mask_symbol(static_cast<std::size_t>(it - types_.begin()));
  }
  if (mask_symbol(types_.size()) >= kMaskLimit) {
    throw std::length_error("too many semantic types in one column");
  }
  types_.push_back(type);
  return mask_symbol(types_.size() - 1);
}

std::string MaskAlphabet::type_of(Symbol token) const {
  const auto idx = mask_index(token);
  if (!is_mask(token) || idx >= types_.size()) return "mask" + std::to_string(idx);
  return types_[idx];
}

bool MaskAlphabet::contains(const std::string& type) const {
  return std::find(types_.begin(), types_.end(), type) != types_.end();
}

bool class_contains(CharClass cls, Symbol s) {
  switch (cls) {
    case CharClass::digit: return is_digit(s);
    case CharClass::lower: return is_lower(s);
    case CharClass::upper: return is_upper(s);
    case CharClass::letter: return is_letter(s);
    case CharClass::alnum: return is_alnum(s);
    case CharClass::space: return s == U' ';
    case CharClass::alnum_space: return is_alnum(s) || s == U' ';
    case CharClass::binary01: return s == U'0' || s == U'1';
  }
  return false;
}

std::string_view class_syntax(CharClass cls) {
  switch (cls) {
    case CharClass::digit: return "[0-9]";
    case CharClass::lower: return "[a-z]";
    case CharClass::upper: return "[A-Z]";
    case CharClass::letter: return "[a-zA-Z]";
    case CharClass::alnum: return "[0-9a-zA-Z]";
    case CharClass::space: return "␣";
    case CharClass::alnum_space: return "[0-9a-zA-Z␣]";
    case CharClass::binary01: return "[0-1]";
  }
  return "?";
}

std::vector<Symbol> class_members(CharClass cls) {
  std::vector<Symbol> out;
  if (class_contains(cls, U' ')) out.push_back(U' ');
  for (Symbol s = U'0'; s <= U'z'; ++s) {
    if (class_contains(cls, s)) out.push_back(s);
  }
  return out;
}

std::size_t class_size(CharClass cls) {
  switch (cls) {
    case CharClass::digit: return 10;
    case CharClass::lower: return 26;
    case CharClass::upper: return 26;
    case CharClass::letter: return 52;
    case CharClass::alnum: return 62;
    case CharClass::space: return 1;
    case CharClass::alnum_space: return 63;
    case CharClass::binary01: return 2;
  }
  return 0;
}

bool class_subsumes(CharClass outer, CharClass inner) {
  for (Symbol s : class_members(inner)) {
    if (!class_contains(outer, s)) return false;
  }
  return true;
}

bool join_classes(CharClass a, CharClass b, CharClass& out) {
  bool found = false;
  std::size_t best = 0;
  for (CharClass c : kAllClasses) {
    if (class_subsumes(c, a) && class_subsumes(c, b)) {
      if (!found || class_size(c) < best) {
        out = c;
        best = class_size(c);
        found = true;
      }
    }
  }
  return found;
}

std::string render_symbols(SymbolView text, const MaskAlphabet* alphabet) {
  std::string out;
  for (Symbol s : text) {
    if (is_mask(s)) {
      out += '{';
      out += alphabet ? alphabet->type_of(s) : "mask" + std::to_string(mask_index(s));
      out += '}';
    } else {
      out += encode_utf8(std::u32string_view(&s, 1));
    }
  }
  return out;
}

}  // namespace strfix
