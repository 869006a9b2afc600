#include "xcube/query.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace xcube {

std::string_view agg_op_name(AggOp op) {
    switch (op) {
        case AggOp::Sum: return "sum";
        case AggOp::Avg: return "avg";
        case AggOp::Count: return "count";
        case AggOp::Min: return "min";
        case AggOp::Max: return "max";
    }
    return "?";
}

std::string AggSpec::label() const {
    std::string s = "agg:";
    s += agg_op_name(op);
    s += '(';
    s += measure;
    s += ')';
    return s;
}

namespace {

std::optional<AggOp> agg_op_from(std::string_view name) {
    if (name == "sum") return AggOp::Sum;
    if (name == "avg") return AggOp::Avg;
    if (name == "count") return AggOp::Count;
    if (name == "min") return AggOp::Min;
    if (name == "max") return AggOp::Max;
    return std::nullopt;
}

enum class Tok {
    Ident, Var, StrLit,
    LParen, RParen, LBracket, RBracket,
    Slash, DoubleSlash, At, Eq, Comma, Assign,
    End, Bad,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1, col = 1;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    const Token& peek() {
        if (!cached_) {
            cached_token_ = scan();
            cached_ = true;
        }
        return cached_token_;
    }

    Token next() {
        peek();
        cached_ = false;
        return cached_token_;
    }

    // Raw capture for bare names that may contain spaces (group-by arguments,
    // aggregation measures): consumes up to, not including, any of the stop
    // characters, and returns the trimmed text.
    std::string raw_until(std::string_view stops) {
        if (cached_) {
            // Rewind to the start of the lookahead token.
            pos_ = cached_token_.offset;
            line_ = cached_token_.line;
            col_ = cached_token_.col;
            cached_ = false;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos)
            advance();
        std::string_view piece = text_.substr(start, pos_ - start);
        while (!piece.empty() && is_space(piece.front())) piece.remove_prefix(1);
        while (!piece.empty() && is_space(piece.back())) piece.remove_suffix(1);
        return std::string(piece);
    }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident_char(char c) {
        return is_ident_start(c) || (c >= '0' && c <= '9') || c == '.' || c == '-';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token scan() {
        while (pos_ < text_.size() && is_space(text_[pos_])) advance();
        Token t;
        t.line = line_;
        t.col = col_;
        t.offset = pos_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = text_[pos_];
        if (c == '$') {
            advance();
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
            t.kind = pos_ > start ? Tok::Var : Tok::Bad;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        if (c == '\'' || c == '"') {
            char quote = c;
            advance();
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != quote) advance();
            if (pos_ >= text_.size()) {
                t.kind = Tok::Bad;
                t.text = "unterminated string literal";
                return t;
            }
            t.kind = Tok::StrLit;
            t.text = std::string(text_.substr(start, pos_ - start));
            advance();  // closing quote
            return t;
        }
        if (is_ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
            t.kind = Tok::Ident;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        switch (c) {
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '[': t.kind = Tok::LBracket; break;
            case ']': t.kind = Tok::RBracket; break;
            case '@': t.kind = Tok::At; break;
            case '=': t.kind = Tok::Eq; break;
            case ',': t.kind = Tok::Comma; break;
            case '/':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '/') {
                    advance();
                    t.kind = Tok::DoubleSlash;
                } else {
                    t.kind = Tok::Slash;
                }
                return t;
            case ':':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    advance();
                    t.kind = Tok::Assign;
                } else {
                    t.kind = Tok::Bad;
                    t.text = ":";
                }
                return t;
            default:
                t.kind = Tok::Bad;
                t.text = std::string(1, c);
                break;
        }
        advance();
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, col_ = 1;
    bool cached_ = false;
    Token cached_token_;
};

struct PathStep {
    std::string element;
    std::string pred_attr;   // [@pred_attr='pred_value'], empty if none
    std::string pred_value;
};

struct Path {
    std::string var;       // leading $var, empty for absolute paths
    std::string doc;       // document('...') argument, empty if none
    std::vector<PathStep> steps;
    std::string attr;      // trailing @attr, empty if none

    const PathStep* last_step() const { return steps.empty() ? nullptr : &steps.back(); }
};

struct Conjunct {
    Path lhs;
    bool rhs_is_literal = false;
    std::string literal;
    Path rhs_path;
    std::size_t line = 0, col = 0;
};

class Parser {
public:
    Parser(std::string_view text) : text_(text), lex_(text) {}

    Parsed<Query> run() {
        Parsed<Query> out;
        Query q;
        q.source_text = std::string(text_);

        if (!parse_for_clauses()) return finish(out);
        while (peek_is_ident("let"))
            if (!parse_let_clause()) return finish(out);
        if (peek_is_ident("where"))
            if (!parse_where_clause()) return finish(out);
        if (!parse_group_clause(q)) return finish(out);
        if (!parse_return_clause(q)) return finish(out);
        if (lex_.peek().kind != Tok::End) {
            error(lex_.peek(), "unexpected trailing input");
            return finish(out);
        }
        if (!assemble(q)) return finish(out);

        out.value = std::move(q);
        out.diags = std::move(diags_);
        return out;
    }

private:
    Parsed<Query> finish(Parsed<Query>& out) {
        if (diags_.empty()) error(lex_.peek(), "invalid query");
        out.diags = std::move(diags_);
        return out;
    }

    bool error(const Token& at, std::string message) {
        Diagnostic d;
        d.message = std::move(message);
        d.line = at.line;
        d.col = at.col;
        if (!at.text.empty()) d.where = at.text;
        diags_.push_back(std::move(d));
        return false;
    }

    bool peek_is_ident(std::string_view kw) {
        const Token& t = lex_.peek();
        return t.kind == Tok::Ident && t.text == kw;
    }

    bool expect_ident(std::string_view kw) {
        const Token& t = lex_.peek();
        if (t.kind != Tok::Ident || t.text != kw)
            return error(t, "expected '" + std::string(kw) + "'");
        lex_.next();
        return true;
    }

    bool expect(Tok kind, std::string_view what) {
        const Token& t = lex_.peek();
        if (t.kind != kind) return error(t, "expected " + std::string(what));
        lex_.next();
        return true;
    }

    // --- paths --------------------------------------------------------------

    bool parse_path(Path& path) {
        const Token& first = lex_.peek();
        if (first.kind == Tok::Var) {
            path.var = first.text;
            lex_.next();
        } else if (first.kind == Tok::Ident && first.text == "document") {
            lex_.next();
            if (!expect(Tok::LParen, "'('")) return false;
            const Token& arg = lex_.peek();
            if (arg.kind == Tok::StrLit) {
                path.doc = arg.text;
                lex_.next();
            } else if (arg.kind == Tok::Ident) {
                // document(Facts.xml) without quotes also appears in the wild
                path.doc = arg.text;
                lex_.next();
            } else {
                return error(arg, "expected document name");
            }
            if (!expect(Tok::RParen, "')'")) return false;
        } else if (first.kind == Tok::DoubleSlash) {
            lex_.next();
            return parse_steps(path, /*leading_consumed=*/true);
        } else if (first.kind == Tok::Slash) {
            lex_.next();
            return parse_steps(path, true);
        } else {
            return error(first, "expected a path");
        }
        // After $var or document(...): zero or more /step segments.
        return parse_steps(path, false);
    }

    bool parse_steps(Path& path, bool leading_consumed) {
        bool expect_segment = leading_consumed;
        for (;;) {
            if (!expect_segment) {
                Tok k = lex_.peek().kind;
                if (k != Tok::Slash && k != Tok::DoubleSlash) return true;
                lex_.next();
            }
            expect_segment = false;
            const Token& t = lex_.peek();
            if (t.kind == Tok::At) {
                lex_.next();
                const Token& name = lex_.peek();
                if (name.kind != Tok::Ident) return error(name, "expected attribute name after '@'");
                path.attr = name.text;
                lex_.next();
                return true;  // @attr terminates the path
            }
            if (t.kind != Tok::Ident) return error(t, "expected path step");
            PathStep step;
            step.element = t.text;
            lex_.next();
            if (lex_.peek().kind == Tok::LBracket) {
                lex_.next();
                if (!expect(Tok::At, "'@'")) return false;
                const Token& pa = lex_.peek();
                if (pa.kind != Tok::Ident) return error(pa, "expected attribute name");
                step.pred_attr = pa.text;
                lex_.next();
                if (!expect(Tok::Eq, "'='")) return false;
                const Token& pv = lex_.peek();
                if (pv.kind != Tok::StrLit) return error(pv, "expected string literal");
                step.pred_value = pv.text;
                lex_.next();
                if (!expect(Tok::RBracket, "']'")) return false;
            }
            path.steps.push_back(std::move(step));
        }
    }

    // --- clauses ------------------------------------------------------------

    bool parse_for_clauses() {
        if (!peek_is_ident("for")) return error(lex_.peek(), "expected 'for'");
        while (peek_is_ident("for")) {
            lex_.next();
            for (;;) {
                const Token& v = lex_.peek();
                if (v.kind != Tok::Var) return error(v, "expected variable after 'for'");
                std::string var = v.text;
                lex_.next();
                if (!expect_ident("in")) return false;
                Path path;
                const Token& at = lex_.peek();
                if (!parse_path(path)) return false;
                if (!classify_binding(var, path, at)) return false;
                if (lex_.peek().kind != Tok::Comma) break;
                lex_.next();
            }
        }
        return true;
    }

    bool classify_binding(const std::string& var, const Path& path, const Token& at) {
        // Dimension iterator: .../Level[@node='D']/node
        const auto& steps = path.steps;
        if (steps.size() >= 2 && steps.back().element == "node" &&
            steps[steps.size() - 2].element == "Level") {
            const PathStep& level = steps[steps.size() - 2];
            if (level.pred_attr != "node" || level.pred_value.empty())
                return error(at, "Level step needs a [@node='dimension'] predicate");
            dim_vars_.emplace_back(var, level.pred_value);
            return true;
        }
        // Fact iterator: //CubeFact/cube/Cell (or CubeFacts)
        if (!steps.empty() && steps.back().element == "Cell") {
            for (const auto& s : steps) {
                if (s.element == "CubeFact" || s.element == "CubeFacts" ||
                    s.element == "cube" || s.element == "Cell")
                    continue;
                return error(at, "unexpected step '" + s.element + "' in fact path");
            }
            if (!fact_var_.empty())
                return error(at, "only one fact iterator is supported");
            fact_var_ = var;
            return true;
        }
        return error(at, "cannot classify 'for' path: expected a Level[@node=...]/node "
                         "dimension iterator or a CubeFact/cube/Cell fact iterator");
    }

    bool parse_let_clause() {
        lex_.next();  // let
        const Token& v = lex_.peek();
        if (v.kind != Tok::Var) return error(v, "expected variable after 'let'");
        lex_.next();
        if (!expect(Tok::Assign, "':='")) return false;
        Path path;
        if (!parse_path(path)) return false;
        // Let bindings only restate group-by sources; nothing to record.
        return true;
    }

    bool parse_where_clause() {
        lex_.next();  // where
        for (;;) {
            Conjunct c;
            const Token& at = lex_.peek();
            c.line = at.line;
            c.col = at.col;
            if (!parse_path(c.lhs)) return false;
            if (!expect(Tok::Eq, "'='")) return false;
            const Token& rhs = lex_.peek();
            if (rhs.kind == Tok::StrLit) {
                c.rhs_is_literal = true;
                c.literal = rhs.text;
                lex_.next();
            } else {
                if (!parse_path(c.rhs_path)) return false;
            }
            conjuncts_.push_back(std::move(c));
            if (peek_is_ident("and")) {
                lex_.next();
                continue;
            }
            if (peek_is_ident("or"))
                return error(lex_.peek(), "disjunction ('or') is not supported; "
                                          "predicates combine with 'and' only");
            return true;
        }
    }

    bool parse_group_clause(Query& q) {
        if (!peek_is_ident("group")) return error(lex_.peek(), "expected 'group by'");
        lex_.next();
        if (!expect_ident("by")) return false;
        if (!expect(Tok::LParen, "'('")) return false;
        for (;;) {
            std::string arg = lex_.raw_until(",)");
            // Bare names may contain spaces; tolerate a stray leading '@' and quotes.
            if (!arg.empty() && arg.front() == '@') arg.erase(arg.begin());
            if (arg.size() >= 2 && (arg.front() == '\'' || arg.front() == '"') &&
                arg.back() == arg.front()) {
                arg = arg.substr(1, arg.size() - 2);
            }
            if (arg.empty()) return error(lex_.peek(), "empty group-by attribute");
            q.group_by.push_back(std::move(arg));
            const Token& t = lex_.peek();
            if (t.kind == Tok::Comma) {
                lex_.next();
                continue;
            }
            if (t.kind == Tok::RParen) {
                lex_.next();
                return true;
            }
            return error(t, "expected ',' or ')' in group by");
        }
    }

    bool parse_return_clause(Query& q) {
        if (!expect_ident("return")) return false;
        bool first = true;
        for (;;) {
            if (peek_is_ident("name") && first) {
                lex_.next();
                if (!expect(Tok::Eq, "'='")) return false;
                const Token& lit = lex_.peek();
                if (lit.kind != Tok::StrLit) return error(lit, "expected string literal");
                lex_.next();  // projection of a group key; carried by group_by already
            } else if (peek_is_ident("aggregation")) {
                lex_.next();
                if (!expect(Tok::LParen, "'('")) return false;
                const Token& op_tok = lex_.peek();
                if (op_tok.kind != Tok::Ident)
                    return error(op_tok, "expected aggregation op");
                auto op = agg_op_from(op_tok.text);
                if (!op)
                    return error(op_tok, "unsupported aggregation op '" + op_tok.text +
                                             "' (use sum, avg, count, min or max)");
                lex_.next();
                if (!expect(Tok::Comma, "','")) return false;
                std::string measure = lex_.raw_until(")");
                if (measure.size() >= 2 && (measure.front() == '\'' || measure.front() == '"') &&
                    measure.back() == measure.front())
                    measure = measure.substr(1, measure.size() - 2);
                if (measure.empty()) return error(lex_.peek(), "expected measure name");
                if (!expect(Tok::RParen, "')'")) return false;
                q.aggregations.push_back(AggSpec{*op, std::move(measure)});
            } else {
                return error(lex_.peek(), first ? "expected 'aggregation(...)'"
                                                : "expected another 'aggregation(...)'");
            }
            first = false;
            if (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                continue;
            }
            if (q.aggregations.empty())
                return error(lex_.peek(), "expected at least one aggregation(...)");
            return true;
        }
    }

    // --- semantic assembly ----------------------------------------------------

    // Resolves which dimension a variable iterates. Undeclared variables
    // alias the dimension iterator when exactly one exists.
    const std::string* dimension_of(const std::string& var) {
        for (const auto& [v, dim] : dim_vars_)
            if (v == var) return &dim;
        if (var != fact_var_ && dim_vars_.size() == 1) return &dim_vars_[0].second;
        return nullptr;
    }

    bool assemble(Query& q) {
        struct PendingName {
            std::string dimension;
            std::string attribute;
            std::size_t line, col;
        };
        std::vector<PendingName> pending;

        Token at;  // reconstructed position for diagnostics
        for (const auto& c : conjuncts_) {
            at.line = c.line;
            at.col = c.col;
            at.text.clear();
            if (!c.rhs_is_literal) {
                // path = path: a fact/dimension join equality; subsumed by the
                // engine's join (or by the index structure).
                continue;
            }
            const Path& p = c.lhs;
            const PathStep* last = p.last_step();
            if (last && last->element == "dimension" && p.attr == "id") {
                // $f/dimension/@id='customers': join boilerplate naming a
                // dimension; remember the name for bind-time checking.
                referenced_dimensions_.push_back(c.literal);
                continue;
            }
            if (last && last->element == "attribute") {
                const std::string* dim = p.var.empty() ? nullptr : dimension_of(p.var);
                if (!dim)
                    return error(at, p.var.empty()
                                         ? "selection predicate must start from a variable"
                                         : "unknown variable $" + p.var);
                if (p.attr == "name" && last->pred_attr.empty()) {
                    pending.push_back({*dim, c.literal, c.line, c.col});
                    continue;
                }
                if (p.attr == "value" && last->pred_attr == "name") {
                    q.selections.push_back(Predicate{*dim, last->pred_value, c.literal});
                    continue;
                }
                if (p.attr == "value" && last->pred_attr.empty()) {
                    // Pairs with the closest earlier @name test on the same dimension.
                    auto it = std::find_if(pending.begin(), pending.end(),
                                           [&](const PendingName& pn) {
                                               return pn.dimension == *dim;
                                           });
                    if (it == pending.end())
                        return error(at, "attribute @value test without a matching @name test");
                    q.selections.push_back(Predicate{it->dimension, it->attribute, c.literal});
                    pending.erase(it);
                    continue;
                }
            }
            return error(at, "unsupported predicate form");
        }
        if (!pending.empty()) {
            Token t;
            t.line = pending.front().line;
            t.col = pending.front().col;
            return error(t, "attribute @name test without a matching @value test");
        }
        return true;
    }

    std::string_view text_;
    Lexer lex_;
    std::vector<Diagnostic> diags_;

    std::vector<std::pair<std::string, std::string>> dim_vars_;  // var -> dimension
    std::string fact_var_;
    std::vector<Conjunct> conjuncts_;
    std::vector<std::string> referenced_dimensions_;

public:
    const std::vector<std::string>& referenced_dimensions() const {
        return referenced_dimensions_;
    }
};

}  // namespace

Parsed<Query> parse_query(std::string_view text) {
    Parser parser(text);
    Parsed<Query> out = parser.run();
    if (out.ok()) out->join_dimension_hints = parser.referenced_dimensions();
    return out;
}

std::vector<Diagnostic> bind_query(Query& q, const WarehouseSchema& schema) {
    std::vector<Diagnostic> diags;
    auto add = [&](std::string msg) { diags.push_back({std::move(msg), 0, 0, ""}); };

    for (auto& sel : q.selections) {
        sel.dim_idx = schema.dim_index(sel.dimension);
        if (sel.dim_idx == npos) {
            add("unknown dimension '" + sel.dimension + "'");
            continue;
        }
        sel.attr_idx = schema.attr_index(sel.dim_idx, sel.attribute);
        if (sel.attr_idx == npos)
            add("attribute '" + sel.attribute + "' does not belong to dimension '" +
                sel.dimension + "'");
    }
    q.group_refs.clear();
    for (const auto& g : q.group_by) {
        std::size_t d = npos, a = npos;
        std::size_t matches = schema.resolve_attribute(g, d, a);
        if (matches == 0) {
            add("unknown attribute '" + g + "' in group by");
            q.group_refs.emplace_back(npos, npos);
        } else if (matches > 1) {
            add("ambiguous attribute '" + g + "' (declared in several dimensions)");
            q.group_refs.emplace_back(npos, npos);
        } else {
            q.group_refs.emplace_back(d, a);
        }
    }
    for (auto& agg : q.aggregations) {
        agg.measure_idx = schema.measure_index(agg.measure);
        if (agg.measure_idx == npos) add("unknown measure '" + agg.measure + "'");
    }
    for (const auto& hint : q.join_dimension_hints)
        if (schema.dim_index(hint) == npos)
            add("join predicate names unknown dimension '" + hint + "'");
    if (q.aggregations.empty()) add("query has no aggregation");
    if (q.group_by.empty()) add("query has no group by attribute");

    q.bound = diags.empty();
    return diags;
}

std::string print_query(const Query& q) {
    // Dimension variables in first-appearance order over the selections.
    std::vector<std::string> dims;
    for (const auto& sel : q.selections)
        if (std::find(dims.begin(), dims.end(), sel.dimension) == dims.end())
            dims.push_back(sel.dimension);

    auto dim_var = [&](const std::string& dim) {
        std::size_t i = std::find(dims.begin(), dims.end(), dim) - dims.begin();
        return "$d" + std::to_string(i + 1);
    };

    std::string s = "for ";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",\n    ";
        s += dim_var(dims[i]) + " in //dimensionData/classification/Level[@node='" + dims[i] +
             "']/node";
    }
    if (!dims.empty()) s += ",\n    ";
    s += "$f in //CubeFact/cube/Cell";
    if (!q.selections.empty()) {
        s += "\nwhere ";
        bool first = true;
        for (const auto& sel : q.selections) {
            if (!first) s += "\n  and ";
            first = false;
            s += dim_var(sel.dimension) + "/attribute[@name='" + sel.attribute + "']/@value='" +
                 sel.value + "'";
        }
        for (const auto& dim : dims)
            s += "\n  and $f/dimension/@id=" + dim_var(dim) + "/@id";
    }
    s += "\ngroup by(" + join(q.group_by, ", ") + ")";
    s += "\nreturn ";
    for (std::size_t i = 0; i < q.aggregations.size(); ++i) {
        if (i) s += ", ";
        s += "aggregation(";
        s += agg_op_name(q.aggregations[i].op);
        s += ", " + q.aggregations[i].measure + ")";
    }
    return s;
}

RepresentativeAttributes representative_attributes(const Query& q) {
    // (dim, attr) -> name; the map ordering is exactly schema order.
    std::map<std::pair<std::size_t, std::size_t>, std::string> attrs;
    for (const auto& sel : q.selections)
        attrs.emplace(std::make_pair(sel.dim_idx, sel.attr_idx), sel.attribute);
    for (std::size_t i = 0; i < q.group_by.size(); ++i)
        attrs.emplace(q.group_refs[i], q.group_by[i]);

    RepresentativeAttributes out;
    out.attrs.reserve(attrs.size());
    for (auto& [key, name] : attrs) out.attrs.push_back(name);
    return out;
}

Parsed<std::vector<Query>> parse_workload(std::string_view text) {
    Parsed<std::vector<Query>> out;
    std::vector<Query> queries;

    std::vector<std::string_view> chunks;
    std::size_t chunk_start = 0, line_start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line = text.substr(line_start, i - line_start);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
            if (line == "---") {
                chunks.push_back(text.substr(chunk_start, line_start - chunk_start));
                chunk_start = i + 1;
            }
            line_start = i + 1;
        }
    }
    chunks.push_back(text.substr(chunk_start));

    std::size_t index = 0;
    for (std::string_view chunk : chunks) {
        std::string_view trimmed = chunk;
        while (!trimmed.empty() && (trimmed.front() == '\n' || trimmed.front() == '\r' ||
                                    trimmed.front() == ' ' || trimmed.front() == '\t'))
            trimmed.remove_prefix(1);
        if (trimmed.empty()) continue;
        auto parsed = parse_query(chunk);
        if (!parsed) {
            for (auto& d : parsed.diags) {
                d.message = "query " + std::to_string(index) + ": " + d.message;
                out.diags.push_back(std::move(d));
            }
            return out;
        }
        queries.push_back(std::move(*parsed));
        ++index;
    }
    out.value = std::move(queries);
    return out;
}

std::string print_workload(const std::vector<Query>& queries) {
    std::string s;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (i) s += "\n---\n";
        s += print_query(queries[i]);
        s += '\n';
    }
    return s;
}

}  // namespace xcube
