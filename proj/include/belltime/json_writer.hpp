#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "belltime/real_format.hpp"

namespace belltime {

// Small ordered JSON emitter.  Keys appear in insertion order and reals carry
// up to 17 significant digits, so output is byte-stable across runs and
// numbers survive a parse round trip exactly.
class JsonWriter {
public:
  explicit JsonWriter(int indent_width = 2) : indent_width_(indent_width) {}

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    comma_and_newline();
    append_escaped(k);
    out_ += ": ";
    pending_value_ = true;
  }

  void value(double v) {
    prefix_value();
    if (std::isfinite(v)) {
      out_ += format_real(v);
    } else {
      out_ += "null";
    }
  }

  void value(std::int64_t v) {
    prefix_value();
    out_ += std::to_string(v);
  }

  void value(std::uint64_t v) {
    prefix_value();
    out_ += std::to_string(v);
  }

  void value(bool v) {
    prefix_value();
    out_ += v ? "true" : "false";
  }

  void value(std::string_view v) {
    prefix_value();
    append_escaped(v);
  }

  void value(const char* v) { value(std::string_view(v)); }

  std::string str() && {
    if (!stack_.empty()) throw std::logic_error("JsonWriter: unclosed container");
    out_ += '\n';
    return std::move(out_);
  }

private:
  struct Level {
    char closer;
    bool has_items = false;
  };

  void open(char opener) {
    prefix_value();
    out_ += opener;
    stack_.push_back({opener == '{' ? '}' : ']'});
  }

  void close(char closer) {
    if (stack_.empty() || stack_.back().closer != closer) {
      throw std::logic_error("JsonWriter: mismatched container close");
    }
    const bool had_items = stack_.back().has_items;
    stack_.pop_back();
    if (had_items) {
      out_ += '\n';
      indent();
    }
    out_ += closer;
  }

  // Inside arrays a bare value needs its own comma/newline; after a key the
  // separator was already written.
  void prefix_value() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    comma_and_newline();
  }

  void comma_and_newline() {
    if (stack_.empty()) return;
    if (stack_.back().has_items) out_ += ',';
    stack_.back().has_items = true;
    out_ += '\n';
    indent();
  }

  void indent() { out_.append(indent_width_ * stack_.size(), ' '); }

  void append_escaped(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<Level> stack_;
  bool pending_value_ = false;
  int indent_width_;
};

}  // namespace belltime
