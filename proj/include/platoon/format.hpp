#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace platoon {

// Round-trip-safe decimal text: 17 significant digits for JSON payloads,
// 12 for CSV tables. Non-finite values have no JSON literal and are emitted
// as the strings "inf", "-inf", "nan".
std::string json_number(double v);
std::string csv_number(double v);

/// Streaming JSON writer with two-space indentation and deterministic key
/// order (whatever order the caller emits). Small on purpose: the output
/// side needs exact numeric formatting, not a document model.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(long v);
    JsonWriter& value(int v) { return value(static_cast<long>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }

    const std::string& str() const { return out_; }

private:
    struct Level {
        bool first = true;
        bool object = false;
    };

    void prefix();
    void indent();
    void escape(std::string_view s);

    std::string out_;
    std::vector<Level> stack_;
    bool have_key_ = false;
};

} // namespace platoon
