#include "monocert/parse.hpp"

#include <cctype>
#include <sstream>

#include "monocert/errors.hpp"

namespace monocert {

namespace {

constexpr unsigned long max_exponent = 65536;

struct lexer {
    std::string_view src;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    std::size_t column() const { return pos + 1; }  // 1-based
    bool eof() {
        skip_space();
        return pos >= src.size();
    }
    char peek() {
        skip_space();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& expected) {
        skip_space();
        std::ostringstream msg;
        msg << "parse error at column " << column() << ": expected " << expected;
        if (pos < src.size()) msg << ", found '" << src[pos] << "'";
        else msg << ", found end of input";
        throw parse_error(column(), expected, msg.str());
    }
    mpz_class integer() {
        skip_space();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) fail("integer");
        return mpz_class(std::string(src.substr(start, pos - start)), 10);
    }
};

int_poly parse_expr(lexer& lx);

int_poly parse_atom(lexer& lx) {
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return int_poly(lx.integer());
    if (c == 't') {
        ++lx.pos;
        return int_poly::variable();
    }
    if (c == '(') {
        ++lx.pos;
        int_poly inner = parse_expr(lx);
        if (!lx.accept(')')) lx.fail("')'");
        return inner;
    }
    lx.fail("integer, 't', or '('");
}

int_poly parse_factor(lexer& lx) {
    if (lx.accept('-')) return -parse_factor(lx);
    int_poly base = parse_atom(lx);
    if (lx.accept('^')) {
        std::size_t col = lx.column();
        mpz_class e = lx.integer();
        if (e > max_exponent) {
            std::ostringstream msg;
            msg << "exponent " << e.get_str() << " at column " << col << " exceeds the limit "
                << max_exponent;
            throw error(errc::cap_exceeded, msg.str());
        }
        return pow(base, e.get_ui());
    }
    return base;
}

int_poly parse_term(lexer& lx) {
    int_poly acc = parse_factor(lx);
    while (lx.accept('*')) acc = acc * parse_factor(lx);
    return acc;
}

int_poly parse_expr(lexer& lx) {
    int_poly acc = parse_term(lx);
    for (;;) {
        if (lx.accept('+')) acc = acc + parse_term(lx);
        else if (lx.accept('-')) acc = acc - parse_term(lx);
        else return acc;
    }
}

int_poly parse_coeff_list(std::string_view body, std::size_t offset) {
    std::vector<mpz_class> coeffs;
    std::size_t pos = 0;
    for (;;) {
        std::size_t comma = body.find(',', pos);
        std::string item(body.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
        // trim
        std::size_t b = item.find_first_not_of(" \t");
        std::size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            throw parse_error(offset + pos + 1, "integer",
                              "parse error at column " + std::to_string(offset + pos + 1) +
                                  ": expected integer in coefficient list");
        }
        item = item.substr(b, e - b + 1);
        try {
            coeffs.emplace_back(item, 10);
        } catch (const std::invalid_argument&) {
            throw parse_error(offset + pos + 1, "integer",
                              "parse error at column " + std::to_string(offset + pos + 1) +
                                  ": '" + item + "' is not an integer");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return int_poly::from_coeffs(std::move(coeffs));
}

}  // namespace

int_poly parse_poly(std::string_view src) {
    constexpr std::string_view prefix = "coeffs:";
    std::string_view trimmed = src;
    std::size_t lead = 0;
    while (lead < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[lead])))
        ++lead;
    if (trimmed.substr(lead).starts_with(prefix)) {
        std::size_t body_at = lead + prefix.size();
        return parse_coeff_list(trimmed.substr(body_at), body_at);
    }
    lexer lx{src};
    if (lx.eof()) lx.fail("integer, 't', or '('");
    int_poly out = parse_expr(lx);
    if (!lx.eof()) lx.fail("operator or end of input");
    return out;
}

}  // namespace monocert
