#include "phianchor/turtle.hpp"

#include <algorithm>

#include "phianchor/errors.hpp"

namespace phianchor {

void PrefixMap::add(const std::string& label, const std::string& iri_base) {
    auto it = entries_.find(label);
    if (it != entries_.end() && it->second != iri_base) {
        throw Error(ErrorCode::SyntaxError, "prefix '" + label + "' re-bound to a different base");
    }
    entries_.emplace(label, iri_base);
}

bool PrefixMap::contains(std::string_view label) const {
    return entries_.find(std::string(label)) != entries_.end();
}

const std::string* PrefixMap::base_for(std::string_view label) const {
    auto it = entries_.find(std::string(label));
    return it == entries_.end() ? nullptr : &it->second;
}

std::string PrefixMap::expand(std::string_view prefixed_name) const {
    auto colon = prefixed_name.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::UnknownPrefix, "'" + std::string(prefixed_name) + "' is not a prefixed name");
    }
    auto label = prefixed_name.substr(0, colon);
    const std::string* base = base_for(label);
    if (!base) {
        throw Error(ErrorCode::UnknownPrefix, "prefix '" + std::string(label) + "' is not declared");
    }
    return *base + std::string(prefixed_name.substr(colon + 1));
}

std::optional<std::string> PrefixMap::compact(std::string_view iri) const {
    const std::string* best_base = nullptr;
    const std::string* best_label = nullptr;
    for (const auto& [label, base] : entries_) {
        if (iri.substr(0, base.size()) == base) {
            if (!best_base || base.size() > best_base->size()) {
                best_base = &base;
                best_label = &label;
            }
        }
    }
    if (!best_base) return std::nullopt;
    return *best_label + ":" + std::string(iri.substr(best_base->size()));
}

namespace {

enum class Tok { End, Dot, Semi, AtPrefix, Iri, Name, String };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (at_end()) return tok;

        char c = peek();
        if (c == '.') {
            advance();
            tok.kind = Tok::Dot;
            return tok;
        }
        if (c == ';') {
            advance();
            tok.kind = Tok::Semi;
            return tok;
        }
        if (c == '@') {
            advance();
            std::string word;
            while (!at_end() && is_name_char(peek())) word += take();
            if (word != "prefix") fail("unknown directive '@" + word + "'", tok);
            tok.kind = Tok::AtPrefix;
            return tok;
        }
        if (c == '<') {
            advance();
            std::string iri;
            while (!at_end() && peek() != '>') {
                if (peek() == '\n') fail("unterminated IRI reference", tok);
                iri += take();
            }
            if (at_end()) fail("unterminated IRI reference", tok);
            advance();  // '>'
            tok.kind = Tok::Iri;
            tok.text = std::move(iri);
            return tok;
        }
        if (c == '"') {
            advance();
            std::string text;
            while (true) {
                if (at_end() || peek() == '\n') fail("unterminated string literal", tok);
                char d = take();
                if (d == '"') break;
                if (d == '\\') {
                    if (at_end()) fail("unterminated escape", tok);
                    char e = take();
                    switch (e) {
                        case '"': text += '"'; break;
                        case '\\': text += '\\'; break;
                        case 'n': text += '\n'; break;
                        case 't': text += '\t'; break;
                        case 'r': text += '\r'; break;
                        default: fail(std::string("unsupported escape '\\") + e + "'", tok);
                    }
                } else {
                    text += d;
                }
            }
            tok.kind = Tok::String;
            tok.text = std::move(text);
            return tok;
        }
        if (is_name_char(c)) {
            std::string name;
            while (!at_end() && is_name_char(peek())) name += take();
            // A trailing dot belongs to the statement, not the name.
            while (!name.empty() && name.back() == '.') {
                name.pop_back();
                rewind_one();
            }
            if (name.empty()) fail("unexpected '.'", tok);
            tok.kind = Tok::Name;
            tok.text = std::move(name);
            return tok;
        }
        fail(std::string("unexpected character '") + c + "'", tok);
        return tok;  // unreachable
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void advance() { take(); }

    void rewind_one() {
        --pos_;
        --col_;  // names never span lines
    }

    void skip_blank() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    static bool is_name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-' || c == ':' || c == '.';
    }

    [[noreturn]] void fail(const std::string& message, const Token& at) const {
        throw Error(ErrorCode::SyntaxError, message, at.line, at.col);
    }
};

[[noreturn]] void fail_at(const Token& tok, const std::string& message) {
    throw Error(ErrorCode::SyntaxError, message, tok.line, tok.col);
}

// Resolves a Name token into a term, checking the prefix is declared.
RdfTerm name_to_term(const Token& tok, const PrefixMap& prefixes) {
    auto colon = tok.text.find(':');
    if (colon == std::string::npos) {
        fail_at(tok, "'" + tok.text + "' is not a prefixed name");
    }
    std::string label = tok.text.substr(0, colon);
    if (!prefixes.contains(label)) {
        throw Error(ErrorCode::UnknownPrefix, "prefix '" + label + "' is not declared", tok.line, tok.col);
    }
    return RdfTerm::prefixed(tok.text);
}

} // namespace

TurtleDocument parse_turtle(std::string_view text) {
    TurtleDocument doc;
    Lexer lexer(text);
    Token tok = lexer.next();

    while (tok.kind != Tok::End) {
        if (tok.kind == Tok::AtPrefix) {
            Token label = lexer.next();
            if (label.kind != Tok::Name || label.text.back() != ':') {
                fail_at(label, "expected prefix label ending in ':'");
            }
            std::string name = label.text.substr(0, label.text.size() - 1);
            if (name.find(':') != std::string::npos) {
                fail_at(label, "prefix label may not contain ':'");
            }
            Token iri = lexer.next();
            if (iri.kind != Tok::Iri) fail_at(iri, "expected <iri> after prefix label");
            Token dot = lexer.next();
            if (dot.kind != Tok::Dot) fail_at(dot, "expected '.' after @prefix directive");
            doc.prefixes.add(name, iri.text);
            tok = lexer.next();
            continue;
        }

        // Subject block.
        RdfTerm subject;
        if (tok.kind == Tok::Iri) {
            subject = RdfTerm::iri(tok.text);
        } else if (tok.kind == Tok::Name) {
            subject = name_to_term(tok, doc.prefixes);
        } else {
            fail_at(tok, "expected a subject");
        }

        while (true) {
            Token pred_tok = lexer.next();
            RdfTerm predicate;
            if (pred_tok.kind == Tok::Iri) {
                predicate = RdfTerm::iri(pred_tok.text);
            } else if (pred_tok.kind == Tok::Name && pred_tok.text == "a") {
                predicate = RdfTerm::type_keyword();
            } else if (pred_tok.kind == Tok::Name) {
                predicate = name_to_term(pred_tok, doc.prefixes);
            } else {
                fail_at(pred_tok, "expected a predicate");
            }

            Token obj_tok = lexer.next();
            RdfTerm object;
            if (obj_tok.kind == Tok::Iri) {
                object = RdfTerm::iri(obj_tok.text);
            } else if (obj_tok.kind == Tok::String) {
                object = RdfTerm::literal(obj_tok.text);
            } else if (obj_tok.kind == Tok::Name) {
                object = name_to_term(obj_tok, doc.prefixes);
            } else {
                fail_at(obj_tok, "expected an object");
            }

            doc.triples.push_back({subject, predicate, object});

            Token sep = lexer.next();
            if (sep.kind == Tok::Semi) continue;
            if (sep.kind == Tok::Dot) break;
            fail_at(sep, "expected ';' or '.' after object");
        }

        tok = lexer.next();
    }
    return doc;
}

namespace {

std::string escape_literal(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render(const RdfTerm& term) {
    switch (term.kind) {
        case TermKind::Iri: return "<" + term.value + ">";
        case TermKind::Prefixed: return term.value;
        case TermKind::Literal: return "\"" + escape_literal(term.value) + "\"";
        case TermKind::A: return "a";
    }
    return term.value;
}

} // namespace

std::string serialize_turtle(const PrefixMap& prefixes, const std::vector<Triple>& triples) {
    std::string out;
    for (const auto& [label, base] : prefixes.entries()) {
        out += "@prefix " + label + ": <" + base + "> .\n";
    }
    if (!prefixes.empty() && !triples.empty()) out += "\n";

    // Group by subject in first-appearance order.
    std::vector<std::pair<RdfTerm, std::vector<const Triple*>>> groups;
    for (const auto& t : triples) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == t.subject; });
        if (it == groups.end()) {
            groups.push_back({t.subject, {&t}});
        } else {
            it->second.push_back(&t);
        }
    }

    for (const auto& [subject, members] : groups) {
        out += render(subject);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i == 0) {
                out += " ";
            } else {
                out += "    ";
            }
            out += render(members[i]->predicate) + " " + render(members[i]->object);
            out += (i + 1 == members.size()) ? " .\n" : " ;\n";
        }
    }
    return out;
}

std::string serialize_turtle(const TurtleDocument& doc) {
    return serialize_turtle(doc.prefixes, doc.triples);
}

std::string term_key(const RdfTerm& term, const PrefixMap& prefixes) {
    switch (term.kind) {
        case TermKind::Iri: return "I" + term.value;
        case TermKind::Prefixed: return "I" + prefixes.expand(term.value);
        case TermKind::Literal: return "L" + term.value;
        case TermKind::A: return "A";
    }
    return term.value;
}

bool same_triple_set(const TurtleDocument& a, const TurtleDocument& b) {
    auto keys = [](const TurtleDocument& doc) {
        std::vector<std::string> out;
        out.reserve(doc.triples.size());
        for (const auto& t : doc.triples) {
            out.push_back(term_key(t.subject, doc.prefixes) + "|" + term_key(t.predicate, doc.prefixes) +
                          "|" + term_key(t.object, doc.prefixes));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    return keys(a) == keys(b);
}

} // namespace phianchor
