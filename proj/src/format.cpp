#include "platoon/format.hpp"

#include <cmath>
#include <cstdio>

namespace platoon {

namespace {

std::string sig_digits(double v, const char* fmt) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

} // namespace

std::string json_number(double v) { return sig_digits(v, "%.17g"); }

std::string csv_number(double v) {
    if (std::isfinite(v)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

JsonWriter& JsonWriter::begin_object() {
    prefix();
    out_ += '{';
    stack_.push_back({true, true});
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool empty = stack_.back().first;
    stack_.pop_back();
    if (!empty) {
        out_ += '\n';
        indent();
    }
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    prefix();
    out_ += '[';
    stack_.push_back({true, false});
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    stack_.pop_back();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    Level& top = stack_.back();
    if (!top.first) out_ += ',';
    top.first = false;
    out_ += '\n';
    indent();
    out_ += '"';
    escape(k);
    out_ += "\": ";
    have_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    prefix();
    out_ += json_number(v);
    return *this;
}

JsonWriter& JsonWriter::value(long v) {
    prefix();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    prefix();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    prefix();
    out_ += '"';
    escape(s);
    out_ += '"';
    return *this;
}

void JsonWriter::prefix() {
    if (have_key_) {
        have_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    Level& top = stack_.back();
    if (!top.object) {
        if (!top.first) out_ += ", ";
        top.first = false;
    }
}

void JsonWriter::indent() { out_.append(2 * stack_.size(), ' '); }

void JsonWriter::escape(std::string_view s) {
    for (char c : s) {
        switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out_ += buf;
            } else {
                out_ += c;
            }
            break;
        }
    }
}

} // namespace platoon
