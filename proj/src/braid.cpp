#include "boxtimes/braid.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "boxtimes/circuit.hpp"
#include "boxtimes/kernels.hpp"
#include "boxtimes/linalg.hpp"

namespace boxtimes {

namespace {

void check_word(const BraidWord& w) {
    if (w.strands < 2)
        throw std::invalid_argument("braid: need at least 2 strands, got " +
                                    std::to_string(w.strands));
    for (const BraidLetter& l : w.letters) {
        if (l.generator < 1 || l.generator >= w.strands)
            throw std::invalid_argument("braid: generator s" +
                                        std::to_string(l.generator) +
                                        " out of range for " +
                                        std::to_string(w.strands) + " strands");
        if (l.exponent != 1 && l.exponent != -1)
            throw std::invalid_argument("braid: exponent must be +1 or -1");
    }
}

}  // namespace

BraidWord parse_braid_word(const std::string& text, std::size_t strands) {
    BraidWord w;
    w.strands = strands;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || tok[0] != 's')
            throw std::invalid_argument("braid: bad token '" + tok +
                                        "', want s<j> or s<j>^-1");
        std::size_t i = 1;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
        if (i == 1)
            throw std::invalid_argument("braid: bad token '" + tok +
                                        "', want s<j> or s<j>^-1");
        BraidLetter l;
        l.generator = std::stoul(tok.substr(1, i - 1));
        const std::string rest = tok.substr(i);
        if (rest.empty()) {
            l.exponent = 1;
        } else if (rest == "^-1") {
            l.exponent = -1;
        } else if (rest == "^1") {
            l.exponent = 1;
        } else {
            throw std::invalid_argument("braid: bad token '" + tok +
                                        "', want s<j> or s<j>^-1");
        }
        w.letters.push_back(l);
    }
    check_word(w);
    return w;
}

std::string braid_word_to_string(const BraidWord& w) {
    std::string out;
    for (const BraidLetter& l : w.letters) {
        if (!out.empty()) out += ' ';
        out += "s" + std::to_string(l.generator);
        if (l.exponent == -1) out += "^-1";
    }
    return out;
}

CMatrix braid_rep(const Gate& c, const BraidWord& w, const Tolerance& tol,
                  std::vector<std::string>* warnings) {
    check_word(w);
    if (c.k != 2)
        throw std::invalid_argument("braid_rep: gate arity is " + std::to_string(c.k) +
                                    ", need 2");
    if (warnings) {
        const double r = ybe_residual(c);
        if (r > tol.eps)
            warnings->push_back("gate fails the Yang-Baxter check: residual " +
                                std::to_string(r) + " > " + std::to_string(tol.eps) +
                                "; the trace may depend on the braid word chosen "
                                "for the link");
    }
    const std::size_t n = w.strands, d = c.d;
    const std::size_t dim = checked_power(d, n, std::size_t(1) << 24);

    bool needs_inverse = false;
    for (const BraidLetter& l : w.letters) needs_inverse |= (l.exponent == -1);
    CMatrix cinv;
    if (needs_inverse) cinv = inverse(c.matrix);

    CMatrix acc = identity(dim);
    CMatrix buf(dim, dim);
    for (const BraidLetter& l : w.letters) {
        const CMatrix& g = l.exponent == 1 ? c.matrix : cinv;
        kernels::apply_two_site_right(acc, g, l.generator - 1, n, d, buf);
        std::swap(acc, buf);
    }
    return acc;
}

void enumerate_braid_words(std::size_t strands, std::size_t max_len,
                           const std::function<bool(const BraidWord&)>& visit) {
    if (strands < 2)
        throw std::invalid_argument("braid: need at least 2 strands, got " +
                                    std::to_string(strands));
    const std::size_t alphabet = 2 * (strands - 1);
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> idx(len, 0);
        while (true) {
            BraidWord w;
            w.strands = strands;
            w.letters.resize(len);
            for (std::size_t i = 0; i < len; ++i)
                w.letters[i] = {idx[i] / 2 + 1, idx[i] % 2 == 0 ? 1 : -1};
            if (!visit(w)) return;
            std::size_t pos = len;
            while (pos > 0) {
                if (++idx[pos - 1] < alphabet) break;
                idx[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
}

}  // namespace boxtimes
