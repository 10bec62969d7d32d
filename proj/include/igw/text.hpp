#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace igw::text {

/// Versioned English stopword list shared by labeling and evaluation.
/// Modal verbs and negations are not stopwords: they carry the deontic.
inline constexpr const char* kStopwordListVersion = "igw-en-1";

const std::vector<std::string>& stopwords();
bool is_stopword(std::string_view word);
/// FNV-1a 64 over the sorted list joined with '\n', as 16 hex digits.
std::string stopword_list_hash();

std::string to_lower(std::string_view s);
/// Removes ASCII punctuation characters.
std::string strip_punctuation(std::string_view s);
bool is_punctuation_token(std::string_view s);

/// Lowercased alphanumeric runs of `s`.
std::vector<std::string> terms(std::string_view s);
/// Whitespace split.
std::vector<std::string> split_whitespace(std::string_view s);

/// Joins tokens with single spaces, without a space before closing
/// punctuation or clitics ("n't", "'s").
std::string detokenize(std::span<const std::string> tokens);

/// Reduces an English verb form to its base ("Driving" -> "drive",
/// "submitted" -> "submit"). Lowercases its input.
std::string lemmatize_verb(std::string_view word);

std::uint64_t fnv1a64(std::string_view data);

}  // namespace igw::text
