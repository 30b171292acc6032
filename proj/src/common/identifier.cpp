#include "unani/common/identifier.hpp"

#include <cctype>
#include <cstdint>
#include <string_view>

namespace unani {
namespace {

// U+00C0..U+00FF; a space marks code points that are not letters.
constexpr std::string_view kLatin1 =
    "AAAAAAACEEEEIIII"
    "DNOOOOO OUUUUYTs"
    "aaaaaaaceeeeiiii"
    "dnooooo ouuuuyty";

// U+0100..U+017F (Latin Extended-A).
constexpr std::string_view kLatinExtA =
    "AaAaAaCcCcCcCcDd"
    "DdEeEeEeEeEeGgGg"
    "GgGgHhHhIiIiIiIi"
    "IiIiJjKkkLlLlLlL"
    "lLlNnNnNnnNnOoOo"
    "OoOoRrRrRrSsSsSs"
    "SsTtTtTtUuUuUuUu"
    "UuUuWwYyYZzZzZzs";

struct Fold {
  char32_t code;
  char ascii;
};

// Dot-below and related letters used in romanised Arabic/Persian terms.
constexpr Fold kLatinExtAdditional[] = {
    {0x1E0C, 'D'}, {0x1E0D, 'd'}, {0x1E24, 'H'}, {0x1E25, 'h'}, {0x1E2A, 'H'},
    {0x1E2B, 'h'}, {0x1E32, 'K'}, {0x1E33, 'k'}, {0x1E36, 'L'}, {0x1E37, 'l'},
    {0x1E42, 'M'}, {0x1E43, 'm'}, {0x1E44, 'N'}, {0x1E45, 'n'}, {0x1E46, 'N'},
    {0x1E47, 'n'}, {0x1E5A, 'R'}, {0x1E5B, 'r'}, {0x1E62, 'S'}, {0x1E63, 's'},
    {0x1E6C, 'T'}, {0x1E6D, 't'}, {0x1E92, 'Z'}, {0x1E93, 'z'}, {0x1E94, 'Z'},
    {0x1E95, 'z'}, {0x1E96, 'h'}, {0x1E8E, 'Y'}, {0x1E8F, 'y'},
};

bool is_dropped_mark(char32_t cp) {
  if (cp >= 0x0300 && cp <= 0x036F) return true;  // combining diacritics
  switch (cp) {
    case 0x2018: case 0x2019: case 0x02BB: case 0x02BC:
    case 0x02BE: case 0x02BF: case 0x00B4: case 0x0060:
      return true;
    default:
      return false;
  }
}

// Decodes one UTF-8 sequence at `pos`; malformed bytes decode as U+FFFD.
char32_t decode(std::string_view s, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + extra >= s.size()) {
    pos = s.size();
    return 0xFFFD;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto cont = static_cast<unsigned char>(s[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      pos += i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

bool is_lower_or_digit(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
}
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

}  // namespace

bool is_valid_identifier(std::string_view id) noexcept {
  if (id.empty() || id.front() < 'a' || id.front() > 'z') return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string ascii_fold(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t pos = 0;
  while (pos < utf8.size()) {
    const char32_t cp = decode(utf8, pos);
    if (cp < 0x80) {
      if (cp == '\'') continue;
      out.push_back(static_cast<char>(cp));
    } else if (is_dropped_mark(cp)) {
      continue;
    } else if (cp >= 0xC0 && cp <= 0xFF) {
      if (cp == 0xC6) {
        out += "AE";
      } else if (cp == 0xE6) {
        out += "ae";
      } else if (cp == 0xDF) {
        out += "ss";
      } else {
        out.push_back(kLatin1[cp - 0xC0]);
      }
    } else if (cp >= 0x100 && cp <= 0x17F) {
      out.push_back(kLatinExtA[cp - 0x100]);
    } else {
      char folded = ' ';
      for (const auto& f : kLatinExtAdditional) {
        if (f.code == cp) {
          folded = f.ascii;
          break;
        }
      }
      out.push_back(folded);
    }
  }
  return out;
}

std::string normalize_identifier(std::string_view text) {
  const std::string folded = ascii_fold(text);

  // Split camelCase humps: "extremitiesMassage" -> "extremities_Massage",
  // "ABCDef" -> "ABC_Def".
  std::string split;
  split.reserve(folded.size() + 8);
  for (std::size_t i = 0; i < folded.size(); ++i) {
    const char c = folded[i];
    if (i > 0 && is_upper(c)) {
      const char prev = folded[i - 1];
      const bool next_lower = i + 1 < folded.size() && is_lower(folded[i + 1]);
      if (is_lower_or_digit(prev) || (is_upper(prev) && next_lower)) split.push_back('_');
    }
    split.push_back(c);
  }

  std::string out;
  out.reserve(split.size());
  bool pending_sep = false;
  for (char c : split) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      if (pending_sep && !out.empty()) out.push_back('_');
      pending_sep = false;
      out.push_back(static_cast<char>(std::tolower(u)));
    } else {
      pending_sep = true;
    }
  }
  return out;
}

std::vector<std::string> tokenize_words(std::string_view text) {
  const std::string folded = ascii_fold(text);
  std::vector<std::string> words;
  std::string current;
  for (char c : folded) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace unani
