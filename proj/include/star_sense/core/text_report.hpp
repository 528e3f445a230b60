#pragma once

#include <string>
#include <vector>

namespace starsense {

// Builder for the structured-text report format: `key = value` lines plus
// pipe-separated tables under [table <name>] headers. Output is byte-stable
// for identical inputs.
class TextReport {
public:
    explicit TextReport(const std::string& title);

    void kv(const std::string& key, const std::string& value);
    void kv(const std::string& key, double value, int decimals = 6);
    void kv(const std::string& key, long long value);
    void blank();
    void line(const std::string& text);
    void section(const std::string& name);

    // columns: header cells; each row must have the same arity
    void table(const std::string& name, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows);

    const std::string& str() const { return body_; }
    void save(const std::string& path) const;

private:
    std::string body_;
};

}  // namespace starsense
