#pragma once

#include <cstdint>
#include <type_traits>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hvclust {

/// Minimal JSON document builder with insertion-ordered objects and floats
/// serialized at 17 significant digits, so that identical runs produce
/// byte-identical files. Non-finite floats serialize as null.
class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>;

    JsonValue() : data_(nullptr) {}
    JsonValue(std::nullptr_t) : data_(nullptr) {}
    JsonValue(bool b) : data_(b) {}
    JsonValue(double d) : data_(d) {}
    JsonValue(int i) : data_(static_cast<std::int64_t>(i)) {}
    JsonValue(std::int64_t i) : data_(i) {}
    template <class T, std::enable_if_t<std::is_unsigned_v<T> && std::is_integral_v<T>, int> = 0>
    JsonValue(T u) : data_(static_cast<std::int64_t>(u)) {}
    JsonValue(const char* s) : data_(std::string(s)) {}
    JsonValue(std::string s) : data_(std::move(s)) {}
    JsonValue(Array a) : data_(std::move(a)) {}
    JsonValue(Object o) : data_(std::move(o)) {}

    static JsonValue object() { return JsonValue(Object{}); }
    static JsonValue array() { return JsonValue(Array{}); }

    JsonValue& set(std::string key, JsonValue value) {
        std::get<Object>(data_).emplace_back(std::move(key), std::move(value));
        return *this;
    }
    JsonValue& push(JsonValue value) {
        std::get<Array>(data_).push_back(std::move(value));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> data_;

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char ch : s) {
            switch (ch) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                        out += buf;
                    } else {
                        out.push_back(ch);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
        const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
        switch (data_.index()) {
            case 0: out += "null"; break;
            case 1: out += std::get<bool>(data_) ? "true" : "false"; break;
            case 2: {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%lld",
                              static_cast<long long>(std::get<std::int64_t>(data_)));
                out += buf;
                break;
            }
            case 3: {
                const double d = std::get<double>(data_);
                if (d != d || d == 1.0 / 0.0 || d == -1.0 / 0.0) {
                    out += "null";
                } else {
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), "%.17g", d);
                    out += buf;
                }
                break;
            }
            case 4: write_escaped(out, std::get<std::string>(data_)); break;
            case 5: {
                const auto& arr = std::get<Array>(data_);
                if (arr.empty()) {
                    out += "[]";
                    break;
                }
                out += "[\n";
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    out += pad;
                    arr[i].write(out, indent, depth + 1);
                    if (i + 1 < arr.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += close_pad + "]";
                break;
            }
            case 6: {
                const auto& obj = std::get<Object>(data_);
                if (obj.empty()) {
                    out += "{}";
                    break;
                }
                out += "{\n";
                for (std::size_t i = 0; i < obj.size(); ++i) {
                    out += pad;
                    write_escaped(out, obj[i].first);
                    out += ": ";
                    obj[i].second.write(out, indent, depth + 1);
                    if (i + 1 < obj.size()) out.push_back(',');
                    out.push_back('\n');
                }
                out += close_pad + "}";
                break;
            }
        }
    }
};

} // namespace hvclust
