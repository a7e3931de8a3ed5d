#pragma once

// Minimal streaming JSON writer.  Numbers are printed with 17 significant
// digits so doubles round-trip; non-finite numbers become null.  Keys keep
// insertion order, which makes the output byte-stable.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace xsf::detail {

class JsonOut {
 public:
  JsonOut& begin_object() { return open('{'); }
  JsonOut& end_object() { return close('}'); }
  JsonOut& begin_array() { return open('['); }
  JsonOut& end_array() { return close(']'); }

  JsonOut& key(const std::string& k) {
    separate();
    write_string(k);
    buf_ += ':';
    after_key_ = true;
    return *this;
  }

  JsonOut& value(double v) {
    separate();
    if (!std::isfinite(v)) {
      buf_ += "null";
    } else {
      char tmp[32];
      std::snprintf(tmp, sizeof tmp, "%.17g", v);
      buf_ += tmp;
    }
    return *this;
  }
  JsonOut& value(int v) { return raw(std::to_string(v)); }
  JsonOut& value(long v) { return raw(std::to_string(v)); }
  JsonOut& value(bool v) { return raw(v ? "true" : "false"); }
  JsonOut& value(const std::string& v) {
    separate();
    write_string(v);
    return *this;
  }
  JsonOut& value(const char* v) { return value(std::string(v)); }

  template <class T>
  JsonOut& field(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }

  const std::string& str() const { return buf_; }

 private:
  JsonOut& open(char c) {
    separate();
    buf_ += c;
    first_.push_back(true);
    return *this;
  }
  JsonOut& close(char c) {
    buf_ += c;
    first_.pop_back();
    return *this;
  }
  JsonOut& raw(const std::string& s) {
    separate();
    buf_ += s;
    return *this;
  }
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) buf_ += ',';
      first_.back() = false;
    }
  }
  void write_string(const std::string& s) {
    buf_ += '"';
    for (unsigned char ch : s) {
      switch (ch) {
        case '"': buf_ += "\\\""; break;
        case '\\': buf_ += "\\\\"; break;
        case '\n': buf_ += "\\n"; break;
        case '\t': buf_ += "\\t"; break;
        case '\r': buf_ += "\\r"; break;
        default:
          if (ch < 0x20) {
            char tmp[8];
            std::snprintf(tmp, sizeof tmp, "\\u%04x", ch);
            buf_ += tmp;
          } else {
            buf_ += static_cast<char>(ch);
          }
      }
    }
    buf_ += '"';
  }

  std::string buf_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

}  // namespace xsf::detail
