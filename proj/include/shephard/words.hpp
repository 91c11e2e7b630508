#pragma once

#include <string>
#include <vector>

namespace shephard {

struct Syllable {
    char letter;    // 's' or 't'
    long long exp;  // non-zero
    friend bool operator==(const Syllable& a, const Syllable& b) { return a.letter == b.letter && a.exp == b.exp; }
};

// Word in s, t kept freely reduced at the syllable level.
class SyllableWord {
public:
    SyllableWord() = default;
    explicit SyllableWord(std::vector<Syllable> syllables);

    // tokens s, t, S (= s^-1), T (= t^-1), each with an optional ^n; spaces optional
    static SyllableWord parse(const std::string& text);
    static SyllableWord alternating(char first, int letters);  // prod(first, other; n)

    const std::vector<Syllable>& syllables() const { return syl_; }
    std::size_t syllable_length() const { return syl_.size(); }
    bool empty() const { return syl_.empty(); }
    bool is_cyclically_reduced() const;

    SyllableWord inverse() const;
    SyllableWord power(long long n) const;
    SyllableWord operator*(const SyllableWord& o) const;
    friend bool operator==(const SyllableWord& a, const SyllableWord& b) { return a.syl_ == b.syl_; }

    std::string to_string() const;

private:
    void push(Syllable s);
    std::vector<Syllable> syl_;
};

// Words over an arbitrary finite generating set: (generator index, exponent).
using GroupWord = std::vector<std::pair<int, long long>>;

GroupWord concat(const GroupWord& a, const GroupWord& b);
GroupWord invert(const GroupWord& w);
GroupWord power(const GroupWord& w, long long n);
std::string render(const GroupWord& w, const std::vector<std::string>& names);

}  // namespace shephard
