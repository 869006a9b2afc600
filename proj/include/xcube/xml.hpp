#pragma once

// Minimal streaming XML reader/writer for the warehouse document formats:
// element/attribute markup only, UTF-8, the five predefined entities.
// No DTDs, namespaces, CDATA or mixed content -- documents here never use
// them, and rejecting them keeps diagnostics crisp.

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xcube/diag.hpp"
#include "xcube/util.hpp"

namespace xcube {

struct XmlSource {
    virtual ~XmlSource() = default;
    // Fills buf with up to cap bytes; returns 0 at end of input.
    virtual std::size_t read(char* buf, std::size_t cap) = 0;
};

class MemoryXmlSource final : public XmlSource {
public:
    explicit MemoryXmlSource(std::string_view bytes) : rest_(bytes) {}
    std::size_t read(char* buf, std::size_t cap) override;

private:
    std::string_view rest_;
};

class FileXmlSource final : public XmlSource {
public:
    explicit FileXmlSource(const std::string& path);  // throws DataError
    ~FileXmlSource() override;
    std::size_t read(char* buf, std::size_t cap) override;

private:
    std::FILE* file_;
};

enum class XmlEvent { StartElement, EndElement };

// Pull reader. Memory use is bounded by the largest single tag, so fact
// documents stream at constant memory per element.
class XmlReader {
public:
    explicit XmlReader(XmlSource& source) : src_(source) {}

    // Advances to the next event. Returns false at end of document or on
    // error; check error() to distinguish.
    bool next();

    XmlEvent event() const { return event_; }
    const std::string& name() const { return name_; }
    const std::vector<std::pair<std::string, std::string>>& attrs() const { return attrs_; }
    const std::string* attr(std::string_view attr_name) const;

    std::size_t line() const { return tok_line_; }
    std::size_t col() const { return tok_col_; }
    // Path of the current element, e.g. /dimensionData/classification/Level[2]/node.
    std::string path() const;

    const std::optional<Diagnostic>& error() const { return error_; }
    Diagnostic make_error(std::string message) const;  // annotated with position+path

private:
    struct Frame {
        std::string name;
        std::vector<std::pair<std::string, std::size_t>> child_counts;
        std::size_t ordinal = 1;  // index among same-name siblings
    };

    bool fill(std::size_t need);
    int peek(std::size_t k = 0);
    void advance();
    bool expect(char c);
    void skip_ws();
    bool read_name(std::string& out);
    bool read_attr_value(std::string& out);
    bool skip_until(std::string_view terminator);
    bool fail(std::string message);
    void push_element();

    XmlSource& src_;
    std::string buf_;
    std::size_t pos_ = 0;
    bool input_done_ = false;

    std::size_t line_ = 1, col_ = 1;
    std::size_t tok_line_ = 1, tok_col_ = 1;

    XmlEvent event_ = XmlEvent::StartElement;
    std::string name_;
    std::vector<std::pair<std::string, std::string>> attrs_;
    bool pending_end_ = false;  // self-closing tag: emit EndElement next
    bool seen_root_ = false;
    bool done_ = false;
    std::vector<Frame> stack_;
    std::optional<Diagnostic> error_;
};

// Canonical writer: two-space indent, double-quoted attributes, "\n" line
// ends, empty elements collapsed to <name/>.
class XmlWriter {
public:
    explicit XmlWriter(ByteSink& sink) : sink_(sink) {}

    void declaration();
    void open(std::string_view name,
              std::initializer_list<std::pair<std::string_view, std::string_view>> attributes = {});
    void close();
    void leaf(std::string_view name,
              std::initializer_list<std::pair<std::string_view, std::string_view>> attributes);

private:
    void begin_tag(std::string_view name,
                   std::initializer_list<std::pair<std::string_view, std::string_view>> attributes);
    void finish_pending();
    void indent();
    void escaped(std::string_view text);

    ByteSink& sink_;
    std::vector<std::string> open_names_;
    bool tag_open_ = false;  // "<name attrs" emitted, '>' pending
};

}  // namespace xcube
