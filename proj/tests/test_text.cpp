#include "igw/text.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace igw::text;

TEST(Stopwords, SortedAndUnique) {
    const auto& list = stopwords();
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
    EXPECT_EQ(std::adjacent_find(list.begin(), list.end()), list.end());
}

TEST(Stopwords, KeepsModalsAndNegations) {
    for (const char* w : {"must", "shall", "should", "ought", "may", "can", "might", "could", "will", "not", "never",
                          "cannot"}) {
        EXPECT_FALSE(is_stopword(w)) << w;
    }
    for (const char* w : {"the", "a", "of", "and", "to", "is"}) EXPECT_TRUE(is_stopword(w)) << w;
}

TEST(Stopwords, HashIsStableFnvOfJoinedList) {
    std::string joined;
    for (const auto& w : stopwords()) {
        if (!joined.empty()) joined += '\n';
        joined += w;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
    EXPECT_EQ(stopword_list_hash(), buf);
    EXPECT_EQ(stopword_list_hash().size(), 16u);
}

TEST(Fnv, PublishedVectors) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(Text, LowerAndPunctuation) {
    EXPECT_EQ(to_lower("The PMC"), "the pmc");
    EXPECT_EQ(strip_punctuation("board's,"), "boards");
    EXPECT_TRUE(is_punctuation_token("..."));
    EXPECT_FALSE(is_punctuation_token("a."));
}

TEST(Text, Terms) {
    EXPECT_EQ(terms("Release-vote, 2 PMC!"), (std::vector<std::string>{"release", "vote", "2", "pmc"}));
    EXPECT_TRUE(terms("  ... ").empty());
}

TEST(Text, Detokenize) {
    const std::vector<std::string> words = {"Do", "n't", "commit", "(", "secrets", ")", ":", "ever", "."};
    EXPECT_EQ(detokenize(words), "Don't commit (secrets): ever.");
    const std::vector<std::string> gaps = {"Paula", "", "loves", "it"};
    EXPECT_EQ(detokenize(gaps), "Paula loves it");
}

TEST(Lemmatize, GerundAndDoubledConsonant) {
    EXPECT_EQ(lemmatize_verb("Driving"), "drive");
    EXPECT_EQ(lemmatize_verb("submitted"), "submit");
}

TEST(Lemmatize, RegularAndIrregularForms) {
    const std::vector<std::pair<const char*, const char*>> cases = {
        {"approved", "approve"}, {"approves", "approve"}, {"occurred", "occur"},   {"required", "require"},
        {"studies", "study"},    {"running", "run"},      {"making", "make"},      {"sent", "send"},
        {"kept", "keep"},        {"was", "be"},           {"voted", "vote"},       {"reviewing", "review"},
        {"publishes", "publish"}, {"grants", "grant"},    {"submit", "submit"},    {"agreed", "agree"},
        {"controlled", "control"}, {"filed", "file"},     {"is", "be"},            {"had", "have"}};
    for (const auto& [form, lemma] : cases) EXPECT_EQ(lemmatize_verb(form), lemma) << form;
}

TEST(Lemmatize, LeavesShortAndNonVerbWordsAlone) {
    EXPECT_EQ(lemmatize_verb("bus"), "bus");
    EXPECT_EQ(lemmatize_verb("sing"), "sing");
    EXPECT_EQ(lemmatize_verb(""), "");
}
