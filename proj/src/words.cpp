#include "moulds/words.hpp"

#include <algorithm>
#include <functional>

namespace moulds {

std::string to_string(const Word& w) {
    std::string out = "[";
    for (int i = 0; i < w.length(); ++i) {
        if (i) out += " ";
        out += to_string(w.letters[i]);
    }
    out += "]";
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

Word prepend(const Decoration& eta, const Word& w) {
    Word out;
    out.letters.reserve(w.letters.size() + 1);
    out.letters.push_back(eta);
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

namespace {

// Three-branch recursion (take-left, take-right, merge-heads); the merge
// branch is enabled only for the quasishuffle. Each interleaving or
// contraction is produced exactly once.
void shuffle_rec(const Word& a, std::size_t ia, const Word& b, std::size_t ib,
                 std::vector<Decoration>& acc, bool contracting, LinComb<Word>& out) {
    if (ia == a.letters.size() && ib == b.letters.size()) {
        out.add(Word(acc), Rational(1));
        return;
    }
    if (ia < a.letters.size()) {
        acc.push_back(a.letters[ia]);
        shuffle_rec(a, ia + 1, b, ib, acc, contracting, out);
        acc.pop_back();
    }
    if (ib < b.letters.size()) {
        acc.push_back(b.letters[ib]);
        shuffle_rec(a, ia, b, ib + 1, acc, contracting, out);
        acc.pop_back();
    }
    if (contracting && ia < a.letters.size() && ib < b.letters.size()) {
        acc.push_back(a.letters[ia] + b.letters[ib]);
        shuffle_rec(a, ia + 1, b, ib + 1, acc, contracting, out);
        acc.pop_back();
    }
}

} // namespace

LinComb<Word> shuffle(const Word& a, const Word& b) {
    LinComb<Word> out;
    std::vector<Decoration> acc;
    acc.reserve(a.letters.size() + b.letters.size());
    shuffle_rec(a, 0, b, 0, acc, false, out);
    return out;
}

LinComb<Word> quasishuffle(const Word& a, const Word& b) {
    LinComb<Word> out;
    std::vector<Decoration> acc;
    acc.reserve(a.letters.size() + b.letters.size());
    shuffle_rec(a, 0, b, 0, acc, true, out);
    return out;
}

LinComb<Word> shuffle(const LinComb<Word>& a, const LinComb<Word>& b) {
    LinComb<Word> out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) out.add(shuffle(wa, wb), ca * cb);
    return out;
}

LinComb<Word> quasishuffle(const LinComb<Word>& a, const LinComb<Word>& b) {
    LinComb<Word> out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) out.add(quasishuffle(wa, wb), ca * cb);
    return out;
}

LinComb<TensorPair<Word>> deconcat(const Word& w) {
    LinComb<TensorPair<Word>> out;
    for (int cut = 0; cut <= w.length(); ++cut) {
        Word left(std::vector<Decoration>(w.letters.begin(), w.letters.begin() + cut));
        Word right(std::vector<Decoration>(w.letters.begin() + cut, w.letters.end()));
        out.add({left, right}, Rational(1));
    }
    return out;
}

LinComb<Word> antipode_sh(const Word& w) {
    Word rev = w;
    std::reverse(rev.letters.begin(), rev.letters.end());
    return LinComb<Word>::single(rev, Rational(w.length() % 2 == 0 ? 1 : -1));
}

LinComb<Word> antipode_qsh(const Word& w) {
    LinComb<Word> out;
    if (w.empty()) {
        out.add(w, Rational(1));
        return out;
    }
    Rational sign(w.length() % 2 == 0 ? 1 : -1);
    // Walk all decompositions into nonempty blocks; each contributes the
    // word of block weights read in reverse.
    int s = w.length();
    std::vector<int> cuts; // block end positions
    std::function<void(int)> rec = [&](int start) {
        if (start == s) {
            std::vector<Decoration> blocks;
            int prev = 0;
            for (int end : cuts) {
                Decoration sum = w.letters[prev];
                for (int i = prev + 1; i < end; ++i) sum = sum + w.letters[i];
                blocks.push_back(sum);
                prev = end;
            }
            std::reverse(blocks.begin(), blocks.end());
            out.add(Word(std::move(blocks)), sign);
            return;
        }
        for (int end = start + 1; end <= s; ++end) {
            cuts.push_back(end);
            rec(end);
            cuts.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<Word> enumerate_words(const std::vector<Decoration>& letters, int bound,
                                  int (*cost)(const Decoration&)) {
    std::vector<Word> out;
    out.emplace_back();
    std::vector<Decoration> acc;
    std::function<void(int)> rec = [&](int budget) {
        for (const auto& d : letters) {
            int c = cost(d);
            if (c < 1) throw std::invalid_argument("enumerate_words: letter cost below 1");
            if (c > budget) continue;
            acc.push_back(d);
            out.push_back(Word(acc));
            rec(budget - c);
            acc.pop_back();
        }
    };
    rec(bound);
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
        int ca = 0, cb = 0;
        for (const auto& d : a.letters) ca += cost(d);
        for (const auto& d : b.letters) cb += cost(d);
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return out;
}

std::vector<Word> enumerate_words_by_grade(const std::vector<Decoration>& letters, int max_grade) {
    return enumerate_words(letters, max_grade, [](const Decoration& d) { return d.grade(); });
}

std::vector<Word> enumerate_words_by_weight(const std::vector<Decoration>& letters, int max_weight) {
    return enumerate_words(letters, max_weight, [](const Decoration& d) { return d.weight(); });
}

} // namespace moulds
