#include "rayleigh/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rayleigh::cli {

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) {
    out << "  ";
  }
}

void emit(std::ostream& out, const Json& v, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, child] : v.items()) {
        if (!first) {
          out << ",\n";
        }
        first = false;
        indent(out, depth + 1);
        out << Json(key).dump() << ": ";
        emit(out, child, depth + 1);
      }
      out << "\n";
      indent(out, depth);
      out << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Short arrays of scalars stay on one line.
      const bool flat = v.size() <= 4 && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      out << (flat ? "[" : "[\n");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
          out << (flat ? ", " : ",\n");
        }
        if (!flat) {
          indent(out, depth + 1);
        }
        emit(out, v[i], depth + 1);
      }
      if (!flat) {
        out << "\n";
        indent(out, depth);
      }
      out << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out << (std::isfinite(x) ? format_number(x) : "null");
      return;
    }
    default:
      out << v.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& doc) {
  emit(out, doc, 0);
  out << "\n";
}

std::string to_json_text(const Json& doc) {
  std::ostringstream os;
  write_json(os, doc);
  return os.str();
}

}  // namespace rayleigh::cli
