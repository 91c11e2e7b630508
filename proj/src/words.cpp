#include "shephard/words.hpp"

#include "shephard/errors.hpp"

#include <cctype>
#include <sstream>

namespace shephard {

SyllableWord::SyllableWord(std::vector<Syllable> syllables) {
    for (const Syllable& s : syllables) push(s);
}

void SyllableWord::push(Syllable s) {
    if (s.letter != 's' && s.letter != 't') throw InputError("syllable letter must be s or t");
    if (s.exp == 0) return;
    if (!syl_.empty() && syl_.back().letter == s.letter) {
        syl_.back().exp += s.exp;
        if (syl_.back().exp == 0) syl_.pop_back();
        return;
    }
    syl_.push_back(s);
}

SyllableWord SyllableWord::parse(const std::string& text) {
    SyllableWord w;
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw InputError("word parse error at column " + std::to_string(i + 1) + ": " + why);
    };
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
            ++i;
            continue;
        }
        if (ch != 's' && ch != 't' && ch != 'S' && ch != 'T') fail(std::string("unexpected '") + ch + "'");
        char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        long long sign = std::isupper(static_cast<unsigned char>(ch)) ? -1 : 1;
        ++i;
        long long e = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            size_t digits = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == digits) fail("exponent expected after '^'");
            if (i - digits > 15) fail("exponent too large");
            e = std::stoll(text.substr(start, i - start));
        }
        w.push({letter, sign * e});
    }
    return w;
}

SyllableWord SyllableWord::alternating(char first, int letters) {
    SyllableWord w;
    char cur = first;
    for (int i = 0; i < letters; ++i) {
        w.push({cur, 1});
        cur = cur == 's' ? 't' : 's';
    }
    return w;
}

bool SyllableWord::is_cyclically_reduced() const {
    return syl_.size() <= 1 || syl_.front().letter != syl_.back().letter;
}

SyllableWord SyllableWord::inverse() const {
    SyllableWord w;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.push({it->letter, -it->exp});
    return w;
}

SyllableWord SyllableWord::power(long long n) const {
    SyllableWord base = n < 0 ? inverse() : *this, out;
    for (long long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
    return out;
}

SyllableWord SyllableWord::operator*(const SyllableWord& o) const {
    SyllableWord w = *this;
    for (const Syllable& s : o.syl_) w.push(s);
    return w;
}

std::string SyllableWord::to_string() const {
    if (syl_.empty()) return "e";
    std::ostringstream os;
    for (size_t i = 0; i < syl_.size(); ++i) {
        if (i) os << ' ';
        os << syl_[i].letter;
        if (syl_[i].exp != 1) os << '^' << syl_[i].exp;
    }
    return os.str();
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
    GroupWord w = a;
    for (const auto& x : b) {
        if (x.second == 0) continue;
        if (!w.empty() && w.back().first == x.first) {
            w.back().second += x.second;
            if (w.back().second == 0) w.pop_back();
        } else {
            w.push_back(x);
        }
    }
    return w;
}

GroupWord invert(const GroupWord& w) {
    GroupWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
    return out;
}

GroupWord power(const GroupWord& w, long long n) {
    GroupWord base = n < 0 ? invert(w) : w, out;
    for (long long i = 0; i < (n < 0 ? -n : n); ++i) out = concat(out, base);
    return out;
}

std::string render(const GroupWord& w, const std::vector<std::string>& names) {
    if (w.empty()) return "e";
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << names.at(static_cast<size_t>(w[i].first));
        if (w[i].second != 1) os << '^' << w[i].second;
    }
    return os.str();
}

}  // namespace shephard
