#include "xcube/xml.hpp"

#include <algorithm>
#include <cstring>

namespace xcube {

namespace {
constexpr std::size_t kChunk = 64 * 1024;
constexpr std::size_t kCompactThreshold = 256 * 1024;

bool is_name_start(int c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
}
bool is_name_char(int c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}
bool is_ws(int c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}
}  // namespace

std::size_t MemoryXmlSource::read(char* buf, std::size_t cap) {
    std::size_t n = std::min(cap, rest_.size());
    std::memcpy(buf, rest_.data(), n);
    rest_.remove_prefix(n);
    return n;
}

FileXmlSource::FileXmlSource(const std::string& path) : file_(std::fopen(path.c_str(), "rb")) {
    if (!file_) throw DataError("cannot open file: " + path);
}

FileXmlSource::~FileXmlSource() {
    if (file_) std::fclose(file_);
}

std::size_t FileXmlSource::read(char* buf, std::size_t cap) {
    return std::fread(buf, 1, cap, file_);
}

bool XmlReader::fill(std::size_t need) {
    while (!input_done_ && buf_.size() - pos_ < need) {
        if (pos_ > kCompactThreshold) {
            buf_.erase(0, pos_);
            pos_ = 0;
        }
        std::size_t old = buf_.size();
        buf_.resize(old + kChunk);
        std::size_t got = src_.read(buf_.data() + old, kChunk);
        buf_.resize(old + got);
        if (got == 0) input_done_ = true;
    }
    return buf_.size() - pos_ >= need;
}

int XmlReader::peek(std::size_t k) {
    if (!fill(k + 1)) return -1;
    return static_cast<unsigned char>(buf_[pos_ + k]);
}

void XmlReader::advance() {
    if (buf_[pos_] == '\n') {
        ++line_;
        col_ = 1;
    } else {
        ++col_;
    }
    ++pos_;
}

bool XmlReader::expect(char c) {
    if (peek() != c) return fail(std::string("expected '") + c + "'");
    advance();
    return true;
}

void XmlReader::skip_ws() {
    while (is_ws(peek())) advance();
}

bool XmlReader::fail(std::string message) {
    if (!error_) {
        Diagnostic d;
        d.message = std::move(message);
        d.line = line_;
        d.col = col_;
        d.where = path();
        error_ = std::move(d);
    }
    return false;
}

Diagnostic XmlReader::make_error(std::string message) const {
    Diagnostic d;
    d.message = std::move(message);
    d.line = tok_line_;
    d.col = tok_col_;
    d.where = path();
    return d;
}

std::string XmlReader::path() const {
    std::string p;
    for (const auto& f : stack_) {
        p += '/';
        p += f.name;
        if (f.ordinal > 1) {
            p += '[';
            p += std::to_string(f.ordinal);
            p += ']';
        }
    }
    return p.empty() ? "/" : p;
}

const std::string* XmlReader::attr(std::string_view attr_name) const {
    for (const auto& [k, v] : attrs_)
        if (k == attr_name) return &v;
    return nullptr;
}

bool XmlReader::read_name(std::string& out) {
    out.clear();
    if (!is_name_start(peek())) return fail("expected a name");
    while (is_name_char(peek())) {
        out += static_cast<char>(peek());
        advance();
    }
    // Names with spaces live in attribute *values*, never in markup names.
    return true;
}

bool XmlReader::read_attr_value(std::string& out) {
    out.clear();
    int quote = peek();
    if (quote != '"' && quote != '\'') return fail("expected quoted attribute value");
    advance();
    for (;;) {
        int c = peek();
        if (c < 0) return fail("unterminated attribute value");
        if (c == quote) {
            advance();
            return true;
        }
        if (c == '<') return fail("'<' in attribute value");
        if (c == '&') {
            advance();
            std::string ent;
            while (peek() >= 0 && peek() != ';' && ent.size() < 8) {
                ent += static_cast<char>(peek());
                advance();
            }
            if (peek() != ';') return fail("unterminated entity reference");
            advance();
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else return fail("unsupported entity &" + ent + ";");
            continue;
        }
        out += static_cast<char>(c);
        advance();
    }
}

bool XmlReader::skip_until(std::string_view terminator) {
    for (;;) {
        if (!fill(terminator.size())) return fail("unexpected end of input");
        std::string_view window(buf_.data() + pos_, buf_.size() - pos_);
        std::size_t found = window.find(terminator);
        if (found != std::string_view::npos) {
            for (std::size_t i = 0; i < found + terminator.size(); ++i) advance();
            return true;
        }
        // Keep the tail that could still start the terminator.
        std::size_t keep = terminator.size() - 1;
        while (buf_.size() - pos_ > keep) advance();
        if (input_done_) return fail("unexpected end of input");
    }
}

void XmlReader::push_element() {
    std::size_t ordinal = 1;
    if (!stack_.empty()) {
        auto& counts = stack_.back().child_counts;
        auto it = std::find_if(counts.begin(), counts.end(),
                               [&](const auto& e) { return e.first == name_; });
        if (it == counts.end()) {
            counts.emplace_back(name_, 1);
        } else {
            ordinal = ++it->second;
        }
    }
    stack_.push_back(Frame{name_, {}, ordinal});
}

bool XmlReader::next() {
    if (error_ || done_) return false;

    if (pending_end_) {
        pending_end_ = false;
        event_ = XmlEvent::EndElement;
        // name_ still holds the element name from the self-closing tag.
        stack_.pop_back();
        if (stack_.empty()) done_ = true;
        return true;
    }

    for (;;) {
        int c = peek();
        if (c < 0) {
            if (!stack_.empty())
                return fail("unexpected end of document inside <" + stack_.back().name + ">");
            if (!seen_root_) return fail("empty document");
            done_ = true;
            return false;
        }
        if (c != '<') {
            if (!is_ws(c)) return fail("text content is not supported in these documents");
            advance();
            continue;
        }
        // c == '<'
        tok_line_ = line_;
        tok_col_ = col_;
        if (peek(1) == '?') {
            advance();
            advance();
            if (!skip_until("?>")) return false;
            continue;
        }
        if (peek(1) == '!') {
            if (peek(2) == '-' && peek(3) == '-') {
                advance(); advance(); advance(); advance();
                if (!skip_until("-->")) return false;
                continue;
            }
            return fail("DOCTYPE/CDATA markup is not supported");
        }
        if (peek(1) == '/') {
            advance();
            advance();
            std::string closing;
            if (!read_name(closing)) return false;
            skip_ws();
            if (!expect('>')) return false;
            if (stack_.empty()) return fail("close tag </" + closing + "> with no open element");
            if (stack_.back().name != closing)
                return fail("mismatched close tag </" + closing + ">, expected </" +
                            stack_.back().name + ">");
            event_ = XmlEvent::EndElement;
            name_ = closing;
            attrs_.clear();
            stack_.pop_back();
            if (stack_.empty()) done_ = true;
            return true;
        }
        // Start tag.
        advance();
        if (!read_name(name_)) return false;
        if (stack_.empty() && seen_root_)
            return fail("multiple root elements");
        attrs_.clear();
        for (;;) {
            bool had_ws = is_ws(peek());
            skip_ws();
            int d = peek();
            if (d == '>') {
                advance();
                break;
            }
            if (d == '/') {
                advance();
                if (!expect('>')) return false;
                pending_end_ = true;
                break;
            }
            if (d < 0) return fail("unterminated start tag");
            if (!had_ws) return fail("expected whitespace before attribute");
            std::string key, val;
            if (!read_name(key)) return false;
            skip_ws();
            if (!expect('=')) return false;
            skip_ws();
            if (!read_attr_value(val)) return false;
            for (const auto& [k, _] : attrs_)
                if (k == key) return fail("duplicate attribute '" + key + "'");
            attrs_.emplace_back(std::move(key), std::move(val));
        }
        seen_root_ = true;
        push_element();
        event_ = XmlEvent::StartElement;
        return true;
    }
}

void XmlWriter::declaration() {
    sink_.append("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
}

void XmlWriter::finish_pending() {
    if (tag_open_) {
        sink_.append(">\n");
        tag_open_ = false;
    }
}

void XmlWriter::indent() {
    static const std::string pad(64, ' ');
    std::size_t n = open_names_.size() * 2;
    while (n > 0) {
        std::size_t take = std::min(n, pad.size());
        sink_.append(std::string_view(pad).substr(0, take));
        n -= take;
    }
}

void XmlWriter::escaped(std::string_view text) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char* rep = nullptr;
        switch (text[i]) {
            case '&': rep = "&amp;"; break;
            case '<': rep = "&lt;"; break;
            case '>': rep = "&gt;"; break;
            case '"': rep = "&quot;"; break;
            default: break;
        }
        if (rep) {
            sink_.append(text.substr(start, i - start));
            sink_.append(rep);
            start = i + 1;
        }
    }
    sink_.append(text.substr(start));
}

void XmlWriter::begin_tag(
    std::string_view name,
    std::initializer_list<std::pair<std::string_view, std::string_view>> attributes) {
    finish_pending();
    indent();
    sink_.append("<");
    sink_.append(name);
    for (const auto& [k, v] : attributes) {
        sink_.append(" ");
        sink_.append(k);
        sink_.append("=\"");
        escaped(v);
        sink_.append("\"");
    }
}

void XmlWriter::open(std::string_view name,
                     std::initializer_list<std::pair<std::string_view, std::string_view>> attributes) {
    begin_tag(name, attributes);
    open_names_.emplace_back(name);
    tag_open_ = true;
}

void XmlWriter::close() {
    std::string name = open_names_.back();
    open_names_.pop_back();
    if (tag_open_) {
        sink_.append("/>\n");
        tag_open_ = false;
    } else {
        indent();
        sink_.append("</");
        sink_.append(name);
        sink_.append(">\n");
    }
}

void XmlWriter::leaf(std::string_view name,
                     std::initializer_list<std::pair<std::string_view, std::string_view>> attributes) {
    begin_tag(name, attributes);
    sink_.append("/>\n");
}

}  // namespace xcube
