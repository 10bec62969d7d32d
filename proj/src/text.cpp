#include "igw/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace igw::text {

namespace {

// English function words. Modals (can, will, should, ...) and negations
// (no, nor, not, *n't) are kept out of the list.
constexpr const char* kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are", "as",
    "at", "be", "because", "been", "before", "being", "below", "between", "both", "but", "by", "d",
    "did", "do", "does", "doing", "down", "during", "each", "few", "for", "from", "further", "had",
    "has", "have", "having", "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "i", "if", "in", "into", "is", "it", "it's", "its", "itself", "just", "ll", "m", "ma", "me",
    "more", "most", "my", "myself", "now", "o", "of", "off", "on", "once", "only", "or", "other",
    "our", "ours", "ourselves", "out", "over", "own", "re", "s", "same", "she", "she's", "so", "some",
    "such", "t", "than", "that", "that'll", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too", "under", "until", "up", "ve",
    "very", "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why",
    "with", "y", "you", "you'd", "you'll", "you're", "you've", "your", "yours", "yourself",
    "yourselves",
};

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> set(std::begin(kStopwords), std::end(kStopwords));
    return set;
}

const std::unordered_map<std::string, std::string>& irregular_verbs() {
    static const std::unordered_map<std::string, std::string> map = {
        {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"},
        {"being", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"}, {"does", "do"},
        {"did", "do"}, {"done", "do"}, {"doing", "do"}, {"made", "make"}, {"took", "take"},
        {"taken", "take"}, {"gave", "give"}, {"given", "give"}, {"went", "go"}, {"gone", "go"},
        {"goes", "go"}, {"got", "get"}, {"gotten", "get"}, {"kept", "keep"}, {"held", "hold"},
        {"brought", "bring"}, {"bought", "buy"}, {"sold", "sell"}, {"sent", "send"}, {"spent", "spend"},
        {"built", "build"}, {"lent", "lend"}, {"left", "leave"}, {"lost", "lose"}, {"met", "meet"},
        {"paid", "pay"}, {"said", "say"}, {"told", "tell"}, {"thought", "think"}, {"taught", "teach"},
        {"sought", "seek"}, {"found", "find"}, {"wrote", "write"}, {"written", "write"}, {"chose", "choose"},
        {"chosen", "choose"}, {"began", "begin"}, {"begun", "begin"}, {"knew", "know"}, {"known", "know"},
        {"saw", "see"}, {"seen", "see"}, {"came", "come"}, {"ran", "run"}, {"led", "lead"},
        {"fed", "feed"}, {"felt", "feel"}, {"heard", "hear"}, {"understood", "understand"},
        {"withdrew", "withdraw"}, {"withdrawn", "withdraw"}, {"drew", "draw"}, {"drawn", "draw"},
        {"drove", "drive"}, {"driven", "drive"}, {"forbade", "forbid"}, {"forbidden", "forbid"},
        {"undertook", "undertake"}, {"undertaken", "undertake"}, {"arose", "arise"}, {"arisen", "arise"},
        {"bore", "bear"}, {"borne", "bear"}, {"froze", "freeze"}, {"frozen", "freeze"}, {"grew", "grow"},
        {"grown", "grow"}, {"shown", "show"}, {"spoke", "speak"}, {"spoken", "speak"}, {"stood", "stand"},
        {"struck", "strike"}, {"won", "win"}, {"wore", "wear"}, {"worn", "wear"}, {"fell", "fall"},
        {"fallen", "fall"}, {"became", "become"}, {"overseen", "oversee"}, {"oversaw", "oversee"},
        {"dealt", "deal"}, {"meant", "mean"}, {"dug", "dig"}, {"hung", "hang"}, {"laid", "lay"},
        {"lay", "lie"}, {"lain", "lie"}, {"rose", "rise"}, {"risen", "rise"}, {"shook", "shake"},
        {"shaken", "shake"}, {"stole", "steal"}, {"stolen", "steal"}, {"ate", "eat"}, {"eaten", "eat"},
        {"flew", "fly"}, {"flown", "fly"}, {"hid", "hide"}, {"hidden", "hide"}, {"rode", "ride"},
        {"ridden", "ride"}, {"slid", "slide"}, {"swore", "swear"}, {"sworn", "swear"}, {"woke", "wake"},
        {"woken", "wake"}, {"could", "can"}, {"would", "will"}, {"should", "shall"}, {"might", "may"},
    };
    return map;
}

// Base forms consulted before the suffix heuristics.
const std::unordered_set<std::string>& base_verbs() {
    static const std::unordered_set<std::string> set = {
        "accept", "access", "accompany", "accord", "account", "achieve", "acquire", "act", "add",
        "address", "adhere", "adjust", "administer", "adopt", "advance", "advise", "affect", "agree",
        "aim", "allocate", "allow", "alter", "amend", "analyze", "announce", "answer", "appeal", "appear",
        "apply", "appoint", "approve", "archive", "argue", "arrange", "ask", "assess", "assign", "assist",
        "assume", "assure", "attach", "attempt", "attend", "audit", "authorize", "avoid", "award", "ban",
        "base", "believe", "belong", "benefit", "block", "breed", "bring", "calculate", "call", "cancel",
        "care", "carry", "cause", "cease", "certify", "change", "charge", "check", "circulate", "cite",
        "claim", "clarify", "clean", "close", "code", "collect", "combine", "comment", "commit",
        "communicate", "comply", "complete", "concern", "conclude", "conduct", "confirm", "conform",
        "consider", "consist", "constitute", "consult", "contact", "contain", "continue", "contribute",
        "control", "convene", "cooperate", "coordinate", "correct", "cover", "create", "credit", "cultivate",
        "date", "decide", "declare", "decline", "dedicate", "default", "define", "delay", "delegate",
        "delete", "deliver", "demonstrate", "deny", "deploy", "deposit", "describe", "designate",
        "destroy", "detect", "determine", "develop", "die", "direct", "disclose", "discuss", "dispose",
        "distribute", "document", "donate", "drive", "edit", "elect", "eliminate", "employ", "enable",
        "encourage", "end", "enforce", "engage", "ensure", "enter", "establish", "evaluate", "examine",
        "exceed", "exchange", "exclude", "execute", "exempt", "exercise", "exist", "expect", "explain",
        "export", "express", "extend", "facilitate", "fail", "feed", "file", "fill", "finalize", "fish",
        "fix", "follow", "forward", "free", "fund", "gain", "generate", "govern", "graduate", "grant",
        "guarantee", "guide", "handle", "harvest", "help", "hire", "host", "identify", "implement",
        "import", "improve", "include", "incorporate", "increase", "indicate", "inform", "initiate",
        "inspect", "install", "interpret", "introduce", "investigate", "invite", "involve", "issue",
        "join", "judge", "justify", "label", "lack", "last", "launch", "license", "limit", "list",
        "live", "locate", "log", "maintain", "manage", "mark", "mean", "measure", "mentor", "merge",
        "migrate", "mitigate", "moderate", "modify", "monitor", "move", "name", "need", "negotiate",
        "note", "notify", "obey", "object", "observe", "obtain", "occur", "offer", "open", "operate",
        "order", "organize", "outline", "own", "participate", "pass", "perform", "permit", "place",
        "plan", "post", "practice", "prepare", "present", "preserve", "prevent", "process", "produce",
        "prohibit", "promote", "propose", "protect", "provide", "publish", "purchase", "pursue", "qualify",
        "raise", "reach", "receive", "recommend", "record", "recover", "reduce", "refer", "refrain",
        "refuse", "register", "regulate", "reject", "relate", "release", "remain", "remove", "renew",
        "repeat", "replace", "report", "represent", "request", "require", "reserve", "resign", "resolve",
        "respect", "respond", "restrict", "retain", "return", "review", "revise", "revoke", "sample",
        "schedule", "secure", "seek", "select", "serve", "share", "ship", "sign", "solicit", "specify",
        "sponsor", "state", "stock", "stop", "store", "submit", "succeed", "suggest", "supervise",
        "supply", "support", "suspend", "sustain", "tag", "terminate", "test", "track", "trade", "train",
        "transfer", "transport", "treat", "trigger", "update", "upload", "use", "utilize", "vaccinate",
        "validate", "verify", "veto", "violate", "visit", "vote", "waive", "warn", "welcome", "withdraw",
        "work",
    };
    return set;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_cvc(std::string_view s) {
    if (s.size() < 3) return false;
    const char c1 = s[s.size() - 3], v = s[s.size() - 2], c2 = s[s.size() - 1];
    return !is_vowel(c1) && is_vowel(v) && !is_vowel(c2) && c2 != 'w' && c2 != 'x' && c2 != 'y';
}

int vowel_groups(std::string_view s) {
    int groups = 0;
    bool in_group = false;
    for (char c : s) {
        const bool v = is_vowel(c) || c == 'y';
        if (v && !in_group) ++groups;
        in_group = v;
    }
    return groups;
}

bool has_vowel(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

// Repairs a stem left after removing -ed/-ing.
std::string restore_stem(std::string stem) {
    const auto& base = base_verbs();
    if (base.count(stem)) return stem;
    if (base.count(stem + "e")) return stem + "e";
    const std::size_t n = stem.size();
    if (n >= 2 && stem[n - 1] == stem[n - 2] && base.count(stem.substr(0, n - 1))) return stem.substr(0, n - 1);
    if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && stem[n - 1] != 'l' &&
        stem[n - 1] != 's' && stem[n - 1] != 'z') {
        return stem.substr(0, n - 1);
    }
    if (stem.ends_with("at") || stem.ends_with("bl") || stem.ends_with("iz") || stem.ends_with("v") ||
        stem.ends_with("uir") || stem.ends_with("ur") || stem.ends_with("rc") || stem.ends_with("nc")) {
        return stem + "e";
    }
    if (ends_cvc(stem) && vowel_groups(stem) == 1) return stem + "e";
    return stem;
}

}  // namespace

const std::vector<std::string>& stopwords() {
    static const std::vector<std::string> sorted = [] {
        std::vector<std::string> v(std::begin(kStopwords), std::end(kStopwords));
        std::sort(v.begin(), v.end());
        return v;
    }();
    return sorted;
}

bool is_stopword(std::string_view word) { return stopword_set().count(std::string(word)) > 0; }

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string stopword_list_hash() {
    std::string joined;
    for (const auto& w : stopwords()) {
        if (!joined.empty()) joined += '\n';
        joined += w;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(joined)));
    return buf;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string strip_punctuation(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        if (!std::ispunct(c)) out += static_cast<char>(c);
    }
    return out;
}

bool is_punctuation_token(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::ispunct(c); });
}

std::vector<std::string> terms(std::string_view s) {
    std::vector<std::string> out;
    std::string current;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c >= 0x80) {
            current += static_cast<char>(std::tolower(c));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    std::string current;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            if (!current.empty()) out.push_back(std::move(current));
            current.clear();
        } else {
            current += static_cast<char>(c);
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::string detokenize(std::span<const std::string> tokens) {
    static const std::unordered_set<std::string> attach_left = {
        ".", ",", ";", ":", "!", "?", ")", "]", "}", "%", "n't", "'s", "'re", "'ve", "'ll", "'d", "'m"};
    static const std::unordered_set<std::string> attach_right = {"(", "[", "{", "$"};
    std::string out;
    bool glue_next = false;
    for (const auto& tok : tokens) {
        if (tok.empty()) continue;
        if (!out.empty() && !glue_next && !attach_left.count(tok)) out += ' ';
        out += tok;
        glue_next = attach_right.count(tok) > 0;
    }
    return out;
}

std::string lemmatize_verb(std::string_view word) {
    std::string w = to_lower(word);
    if (w.empty()) return w;
    const auto& irregular = irregular_verbs();
    if (auto it = irregular.find(w); it != irregular.end()) return it->second;
    const auto& base = base_verbs();
    if (base.count(w)) return w;

    if (w.size() > 4 && w.ends_with("ing")) {
        std::string stem = w.substr(0, w.size() - 3);
        if (has_vowel(stem)) return restore_stem(stem);
    }
    if (w.size() > 3 && w.ends_with("ied")) return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 3 && w.ends_with("eed")) {
        const std::string minus_d = w.substr(0, w.size() - 1);
        return base.count(minus_d) ? minus_d : w;
    }
    if (w.size() > 3 && w.ends_with("ed")) {
        const std::string minus_d = w.substr(0, w.size() - 1);
        if (base.count(minus_d)) return minus_d;
        std::string stem = w.substr(0, w.size() - 2);
        if (has_vowel(stem)) return restore_stem(stem);
    }
    if (w.size() > 3 && w.ends_with("ies")) return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 3 && w.ends_with("es")) {
        const std::string minus_s = w.substr(0, w.size() - 1);
        if (base.count(minus_s)) return minus_s;
        const std::string stem = w.substr(0, w.size() - 2);
        if (stem.ends_with("s") || stem.ends_with("x") || stem.ends_with("z") || stem.ends_with("ch") ||
            stem.ends_with("sh")) {
            return stem;
        }
        return minus_s;
    }
    if (w.size() > 2 && w.ends_with("s") && !w.ends_with("ss") && !w.ends_with("us") && !w.ends_with("is")) {
        return w.substr(0, w.size() - 1);
    }
    return w;
}

}  // namespace igw::text
