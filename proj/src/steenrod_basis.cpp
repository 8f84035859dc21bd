#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>

#include "bpu/steenrod.hpp"

namespace bpu::steenrod {

// ---------------------------------------------------------------------------
// OddPrime

namespace {

bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

}  // namespace

OddPrime::OddPrime(std::uint32_t p) : p_(p)
{
    if (p < 3 || p >= kMaxPrime || !is_prime(p))
        throw std::invalid_argument("OddPrime: " + std::to_string(p) + " is not an odd prime below "
                                    + std::to_string(kMaxPrime));
    auto t = std::make_shared<Tables>();
    t->fact.resize(p);
    t->inv_fact.resize(p);
    t->fact[0] = 1;
    for (std::uint32_t i = 1; i < p; ++i)
        t->fact[i] = static_cast<std::uint32_t>(std::uint64_t(t->fact[i - 1]) * i % p);
    // Wilson: (p-1)! = -1, so inv((p-1)!) = p - 1.
    t->inv_fact[p - 1] = p - 1;
    for (std::uint32_t i = p - 1; i > 0; --i)
        t->inv_fact[i - 1] = static_cast<std::uint32_t>(std::uint64_t(t->inv_fact[i]) * i % p);
    tables_ = std::move(t);
}

std::uint64_t OddPrime::power(unsigned i) const
{
    std::uint64_t r = 1;
    for (unsigned k = 0; k < i; ++k) {
        if (r > std::numeric_limits<std::uint64_t>::max() / 2 / p_)
            throw std::overflow_error("OddPrime::power: overflow");
        r *= p_;
    }
    return r;
}

std::uint32_t OddPrime::reduce(long long c) const
{
    long long r = c % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
}

std::uint32_t OddPrime::binomial(std::uint64_t n, std::uint64_t k) const
{
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    while (n || k) {
        std::uint64_t nd = n % p_, kd = k % p_;
        if (kd > nd)
            return 0;
        r = r * tables_->fact[nd] % p_ * tables_->inv_fact[kd] % p_ * tables_->inv_fact[nd - kd] % p_;
        n /= p_;
        k /= p_;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t OddPrime::multinomial(std::span<const std::uint64_t> xs) const
{
    // Lucas: digit-wise multinomials, zero as soon as a digit column carries.
    std::vector<std::uint64_t> rest(xs.begin(), xs.end());
    std::uint64_t r = 1;
    for (;;) {
        bool any = false;
        std::uint64_t sum = 0;
        std::uint64_t denom = 1;
        for (auto& x : rest) {
            if (x == 0)
                continue;
            any = true;
            std::uint64_t d = x % p_;
            sum += d;
            if (sum >= p_)
                return 0;
            denom = denom * tables_->inv_fact[d] % p_;
            x /= p_;
        }
        if (!any)
            break;
        r = r * tables_->fact[sum] % p_ * denom % p_;
    }
    return static_cast<std::uint32_t>(r);
}

// ---------------------------------------------------------------------------
// AdmissibleWord

AdmissibleWord::AdmissibleWord(std::vector<std::uint8_t> eps, std::vector<std::uint64_t> s, const OddPrime& p)
    : eps_(std::move(eps)), s_(std::move(s))
{
    if (eps_.size() != s_.size() + 1)
        throw std::invalid_argument("AdmissibleWord: need exactly one more epsilon than powers");
    for (auto e : eps_)
        if (e > 1)
            throw std::invalid_argument("AdmissibleWord: epsilon must be 0 or 1");
    for (auto x : s_)
        if (x == 0)
            throw std::invalid_argument("AdmissibleWord: exponents must be positive");
    for (std::size_t i = 0; i + 1 < s_.size(); ++i)
        if (s_[i] < p.value() * s_[i + 1] + eps_[i + 1])
            throw std::invalid_argument("AdmissibleWord: not admissible: " + to_string());
}

std::optional<AdmissibleWord> AdmissibleWord::from_letters(const Word& w, const OddPrime& p)
{
    std::vector<std::uint8_t> eps{0};
    std::vector<std::uint64_t> s;
    for (auto letter : w) {
        if (letter == kBeta) {
            if (eps.back())
                return std::nullopt;
            eps.back() = 1;
        }
        else {
            s.push_back(letter);
            eps.push_back(0);
        }
    }
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] < p.value() * s[i + 1] + eps[i + 1])
            return std::nullopt;
    AdmissibleWord out;
    out.eps_ = std::move(eps);
    out.s_ = std::move(s);
    return out;
}

Word AdmissibleWord::letters() const
{
    Word w;
    for (std::size_t i = 0; i < eps_.size(); ++i) {
        if (eps_[i])
            w.push_back(kBeta);
        if (i < s_.size())
            w.push_back(s_[i]);
    }
    return w;
}

std::uint64_t AdmissibleWord::degree(const OddPrime& p) const
{
    std::uint64_t d = 0;
    for (auto x : s_)
        d += 2 * x * (p.value() - 1);
    for (auto e : eps_)
        d += e;
    return d;
}

long long AdmissibleWord::excess(const OddPrime& p) const
{
    if (s_.empty())
        return eps_[0];
    long long e = 2 * static_cast<long long>(s_[0]) + eps_[0];
    for (std::size_t j = 1; j < s_.size(); ++j)
        e -= 2 * static_cast<long long>(s_[j]) * (p.value() - 1);
    for (std::size_t j = 1; j < eps_.size(); ++j)
        e -= eps_[j];
    return e;
}

std::string AdmissibleWord::to_string() const
{
    std::string out;
    for (auto letter : letters()) {
        if (!out.empty())
            out += ' ';
        out += letter == kBeta ? std::string("b") : "P^" + std::to_string(letter);
    }
    return out.empty() ? "1" : out;
}

bool operator<(const AdmissibleWord& a, const AdmissibleWord& b)
{
    if (a.s_ != b.s_)
        return a.s_ < b.s_;
    return a.eps_ < b.eps_;
}

// ---------------------------------------------------------------------------
// MilnorMonomial

MilnorMonomial::MilnorMonomial(std::vector<std::uint32_t> e, std::vector<std::uint64_t> r)
    : e_(std::move(e)), r_(std::move(r))
{
    std::sort(e_.begin(), e_.end());
    if (std::adjacent_find(e_.begin(), e_.end()) != e_.end())
        throw std::invalid_argument("MilnorMonomial: repeated exterior index");
    while (!r_.empty() && r_.back() == 0)
        r_.pop_back();
}

std::uint64_t MilnorMonomial::degree(const OddPrime& p) const
{
    std::uint64_t d = 0;
    for (auto k : e_)
        d += 2 * p.power(k) - 1;
    for (std::size_t i = 0; i < r_.size(); ++i)
        d += 2 * r_[i] * (p.power(static_cast<unsigned>(i + 1)) - 1);
    return d;
}

std::string MilnorMonomial::to_string() const
{
    std::string out;
    if (!e_.empty()) {
        out += "Q(";
        for (std::size_t i = 0; i < e_.size(); ++i)
            out += (i ? "," : "") + std::to_string(e_[i]);
        out += ')';
    }
    if (!r_.empty()) {
        if (!out.empty())
            out += ' ';
        out += "P(";
        for (std::size_t i = 0; i < r_.size(); ++i)
            out += (i ? "," : "") + std::to_string(r_[i]);
        out += ')';
    }
    return out.empty() ? "1" : out;
}

bool operator<(const MilnorMonomial& a, const MilnorMonomial& b)
{
    if (a.r_ != b.r_)
        return a.r_ < b.r_;
    return a.e_ < b.e_;
}

std::string_view basis_name(Basis b)
{
    return b == Basis::admissible ? "admissible" : "milnor";
}

template <class Mono>
void Element<Mono>::check_prime(const Element& o) const
{
    if (!(p_ == o.p_))
        throw std::invalid_argument("Steenrod element: prime mismatch");
}

template class Element<MilnorMonomial>;
template class Element<AdmissibleWord>;

// ---------------------------------------------------------------------------
// Basis enumeration

namespace {

// Builds admissible words right to left. s_rev / eps_rev hold (s_k, eps_k),
// (s_{k-1}, eps_{k-1}), ...; closing the word chooses eps_0.
void extend_admissible(const OddPrime& p, std::uint64_t remaining, std::vector<std::uint64_t>& s_rev,
                       std::vector<std::uint8_t>& eps_rev, std::vector<AdmissibleWord>& out)
{
    const std::uint64_t step = 2 * (p.value() - 1);
    for (std::uint8_t e0 = 0; e0 <= 1; ++e0) {
        if (remaining == e0) {
            std::vector<std::uint8_t> eps{e0};
            eps.insert(eps.end(), eps_rev.rbegin(), eps_rev.rend());
            std::vector<std::uint64_t> s(s_rev.rbegin(), s_rev.rend());
            out.emplace_back(std::move(eps), std::move(s), p);
        }
    }
    for (std::uint8_t e = 0; e <= 1; ++e) {
        std::uint64_t lo = s_rev.empty() ? 1 : p.value() * s_rev.back() + e;
        for (std::uint64_t s = lo; step * s + e <= remaining; ++s) {
            s_rev.push_back(s);
            eps_rev.push_back(e);
            extend_admissible(p, remaining - step * s - e, s_rev, eps_rev, out);
            s_rev.pop_back();
            eps_rev.pop_back();
        }
    }
}

void extend_milnor_r(const OddPrime& p, std::uint64_t remaining, std::size_t index,
                     std::vector<std::uint64_t>& r, const std::vector<std::uint32_t>& e,
                     std::vector<MilnorMonomial>& out)
{
    if (remaining == 0) {
        out.emplace_back(e, r);
        return;
    }
    std::uint64_t w = 2 * (p.power(static_cast<unsigned>(index + 1)) - 1);
    if (w > remaining)
        return;
    for (std::uint64_t x = 0; x * w <= remaining; ++x) {
        r.push_back(x);
        extend_milnor_r(p, remaining - x * w, index + 1, r, e, out);
        r.pop_back();
    }
}

void extend_milnor_e(const OddPrime& p, std::uint64_t remaining, std::uint32_t next, std::vector<std::uint32_t>& e,
                     std::vector<MilnorMonomial>& out)
{
    std::vector<std::uint64_t> r;
    extend_milnor_r(p, remaining, 0, r, e, out);
    for (std::uint32_t k = next;; ++k) {
        std::uint64_t w = 2 * p.power(k) - 1;
        if (w > remaining)
            break;
        e.push_back(k);
        extend_milnor_e(p, remaining - w, k + 1, e, out);
        e.pop_back();
    }
}

}  // namespace

std::vector<AdmissibleWord> admissible_basis(const OddPrime& p, std::uint64_t d)
{
    std::vector<AdmissibleWord> out;
    std::vector<std::uint64_t> s_rev;
    std::vector<std::uint8_t> eps_rev;
    extend_admissible(p, d, s_rev, eps_rev, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MilnorMonomial> milnor_basis(const OddPrime& p, std::uint64_t d)
{
    std::vector<MilnorMonomial> out;
    std::vector<std::uint32_t> e;
    extend_milnor_e(p, d, 0, e, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    enum Kind { number, plus, minus, beta, power, milnor_q, milnor_p } kind;
    std::uint64_t value = 0;
    std::vector<std::uint64_t> list = {};
};

[[noreturn]] void parse_error(std::string_view text, std::string_view what)
{
    throw std::invalid_argument("cannot parse '" + std::string(text) + "': " + std::string(what));
}

std::uint64_t read_number(std::string_view text, std::size_t& i)
{
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        parse_error(text, "expected a number");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
    return v;
}

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
            ++i;
        }
        else if (c == '+') {
            out.push_back({Token::plus});
            ++i;
        }
        else if (c == '-') {
            out.push_back({Token::minus});
            ++i;
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            out.push_back({Token::number, read_number(text, i)});
        }
        else if (c == 'b' || c == 'B') {
            out.push_back({Token::beta});
            ++i;
        }
        else if ((c == 'P' || c == 'Q') && i + 1 < text.size() && text[i + 1] == '(') {
            Token t{c == 'P' ? Token::milnor_p : Token::milnor_q};
            i += 2;
            while (i < text.size() && text[i] != ')') {
                if (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
                    ++i;
                    continue;
                }
                t.list.push_back(read_number(text, i));
            }
            if (i >= text.size())
                parse_error(text, "unterminated parenthesis");
            ++i;
            out.push_back(std::move(t));
        }
        else if (c == 'P') {
            ++i;
            if (i < text.size() && text[i] == '^')
                ++i;
            out.push_back({Token::power, read_number(text, i)});
        }
        else {
            parse_error(text, std::string("unexpected character '") + c + "'");
        }
    }
    return out;
}

// Splits a token stream into signed terms: (coefficient, letters).
template <class F>
void for_each_term(std::string_view text, const std::vector<Token>& toks, F&& on_term)
{
    std::size_t i = 0;
    bool first = true;
    while (i < toks.size()) {
        long long sign = 1;
        if (toks[i].kind == Token::plus || toks[i].kind == Token::minus) {
            sign = toks[i].kind == Token::minus ? -1 : 1;
            ++i;
        }
        else if (!first) {
            parse_error(text, "expected '+' or '-' between terms");
        }
        first = false;
        long long coeff = 1;
        if (i < toks.size() && toks[i].kind == Token::number) {
            coeff = static_cast<long long>(toks[i].value);
            ++i;
        }
        std::vector<Token> letters;
        while (i < toks.size() && toks[i].kind != Token::plus && toks[i].kind != Token::minus)
            letters.push_back(toks[i++]);
        on_term(sign * coeff, letters);
    }
}

Word letters_to_word(std::string_view text, const std::vector<Token>& letters)
{
    Word w;
    for (const auto& t : letters) {
        if (t.kind == Token::beta)
            w.push_back(kBeta);
        else if (t.kind == Token::power) {
            if (t.value > 0)
                w.push_back(t.value);
        }
        else
            parse_error(text, "expected 'b' or 'P^s'");
    }
    return w;
}

}  // namespace

Word parse_word(std::string_view text)
{
    auto toks = tokenize(text);
    Word out;
    std::size_t terms = 0;
    for_each_term(text, toks, [&](long long coeff, const std::vector<Token>& letters) {
        if (coeff != 1)
            parse_error(text, "a single word takes no coefficient");
        out = letters_to_word(text, letters);
        ++terms;
    });
    if (terms > 1)
        parse_error(text, "expected a single word");
    return out;
}

AdmissibleElement parse_admissible(const OddPrime& p, std::string_view text)
{
    AdmissibleElement out(p);
    for_each_term(text, tokenize(text), [&](long long coeff, const std::vector<Token>& letters) {
        Word w = letters_to_word(text, letters);
        auto a = AdmissibleWord::from_letters(w, p);
        if (!a)
            parse_error(text, "word is not admissible");
        out.add(*a, coeff);
    });
    return out;
}

MilnorElement parse_milnor(const OddPrime& p, std::string_view text)
{
    MilnorElement out(p);
    for_each_term(text, tokenize(text), [&](long long coeff, const std::vector<Token>& letters) {
        std::vector<std::uint32_t> e;
        std::vector<std::uint64_t> r;
        bool seen_q = false, seen_p = false;
        for (const auto& t : letters) {
            if (t.kind == Token::milnor_q && !seen_q && !seen_p) {
                for (auto x : t.list)
                    e.push_back(static_cast<std::uint32_t>(x));
                seen_q = true;
            }
            else if (t.kind == Token::milnor_p && !seen_p) {
                r = t.list;
                seen_p = true;
            }
            else {
                parse_error(text, "expected 'Q(...)' followed by 'P(...)'");
            }
        }
        out.add(MilnorMonomial(std::move(e), std::move(r)), coeff);
    });
    return out;
}

}  // namespace bpu::steenrod
