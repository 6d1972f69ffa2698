#include "mlie/io.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace mlie {

using ojson = nlohmann::ordered_json;

FileError::FileError(const std::string& source, int line, const std::string& message)
    : InvalidInput(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

// Line of the first character of every value, keyed by JSON pointer. Only
// called on text that nlohmann already accepted, so the scanner can assume
// well-formed input.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) : s_(text) {
    skip_ws();
    value("");
  }

  int line_of(const std::string& pointer) const {
    // Fall back to the nearest enclosing value that was indexed.
    std::string p = pointer;
    while (true) {
      const auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      if (p.empty()) return 1;
      p.erase(p.rfind('/'));
    }
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') {
        out += s_[pos_++];
      }
      out += s_[pos_++];
    }
    ++pos_;
    return out;
  }

  static std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') {
        out += "~0";
      } else if (c == '/') {
        out += "~1";
      } else {
        out += c;
      }
    }
    return out;
  }

  void value(const std::string& pointer) {
    lines_[pointer] = line_;
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // colon
        skip_ws();
        value(pointer + "/" + escape_pointer(key));
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      int index = 0;
      while (pos_ < s_.size() && s_[pos_] != ']') {
        value(pointer + "/" + std::to_string(index++));
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

// Shared state for validating one parsed document.
class Reader {
 public:
  Reader(const std::string& text, const std::string& source) : text_(text), source_(source) {
    try {
      doc_ = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
      throw FileError(source_, line_at_byte(e.byte), "invalid JSON: " + strip_prefix(e.what()));
    }
    index_.emplace(text_);
  }

  const ojson& doc() const { return doc_; }
  int line_of(const std::string& pointer) const { return index_->line_of(pointer); }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw FileError(source_, index_->line_of(pointer), message);
  }

  const ojson& field(const ojson& obj, const std::string& pointer, const std::string& key, bool required) const {
    static const ojson null_value;
    if (!obj.is_object()) fail(pointer, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(pointer, "missing field '" + key + "'");
      return null_value;
    }
    return *it;
  }

  double number(const ojson& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "number is not finite");
    return x;
  }

  int integer(const ojson& v, const std::string& pointer) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    return v.get<int>();
  }

  Vector vector(const ojson& v, const std::string& pointer, Index n) const {
    if (!v.is_array()) fail(pointer, "expected an array");
    if (static_cast<Index>(v.size()) != n) fail(pointer, "expected " + std::to_string(n) + " entries");
    Vector out(n);
    for (Index i = 0; i < n; ++i) {
      out(i) = number(v[static_cast<std::size_t>(i)], pointer + "/" + std::to_string(i));
    }
    return out;
  }

  Matrix matrix(const ojson& v, const std::string& pointer, Index n) const {
    if (!v.is_array()) fail(pointer, "expected an array of rows");
    if (static_cast<Index>(v.size()) != n) fail(pointer, "expected " + std::to_string(n) + " rows");
    Matrix out(n, n);
    for (Index i = 0; i < n; ++i) {
      const std::string row = pointer + "/" + std::to_string(i);
      out.row(i) = vector(v[static_cast<std::size_t>(i)], row, n).transpose();
    }
    return out;
  }

  std::string comment(const ojson& obj) const {
    const ojson& c = field(obj, "", "comment", false);
    if (c.is_null()) return {};
    if (!c.is_string()) fail("/comment", "expected a string");
    return c.get<std::string>();
  }

  void reject_unknown(const ojson& obj, std::initializer_list<const char*> allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || it.key() == a;
      if (!ok) fail("/" + it.key(), "unknown field '" + it.key() + "'");
    }
  }

 private:
  int line_at_byte(std::size_t byte) const {
    const std::size_t end = std::min(byte, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
  }

  static std::string strip_prefix(const std::string& what) {
    // nlohmann messages look like "[json.exception.parse_error.101] parse error at line 3, column 5: ...".
    const auto colon = what.find(": ");
    return colon == std::string::npos ? what : what.substr(colon + 2);
  }

  const std::string& text_;
  std::string source_;
  ojson doc_;
  std::optional<LineIndex> index_;
};

ojson matrix_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson vector_json(const Vector& v) {
  ojson out = ojson::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

AlgebraFile parse_algebra(const std::string& text, const std::string& source, double tol) {
  const Reader r(text, source);
  const ojson& doc = r.doc();
  if (!doc.is_object()) r.fail("", "expected a JSON object");
  r.reject_unknown(doc, {"dim", "brackets", "metric", "comment"});
  const int n = r.integer(r.field(doc, "", "dim", true), "/dim");
  if (n < 1) r.fail("/dim", "dimension must be positive");

  const ojson& brackets = r.field(doc, "", "brackets", true);
  if (!brackets.is_array()) r.fail("/brackets", "expected an array");
  std::vector<BracketTerm> terms;
  std::map<std::pair<int, int>, std::size_t> seen;
  for (std::size_t t = 0; t < brackets.size(); ++t) {
    const std::string p = "/brackets/" + std::to_string(t);
    const ojson& entry = brackets[t];
    if (!entry.is_object()) r.fail(p, "expected an object");
    r.reject_unknown(entry, {"i", "j", "coeffs"});
    const int i = r.integer(r.field(entry, p, "i", true), p + "/i");
    const int j = r.integer(r.field(entry, p, "j", true), p + "/j");
    if (i < 1 || i > n) r.fail(p + "/i", "index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
    if (j < 1 || j > n) r.fail(p + "/j", "index " + std::to_string(j) + " out of range 1.." + std::to_string(n));
    if (i >= j) r.fail(p, "brackets must satisfy i < j");
    if (const auto [it, inserted] = seen.emplace(std::make_pair(i, j), t); !inserted) {
      r.fail(p, "bracket [" + std::to_string(i) + "," + std::to_string(j) + "] repeats entry " +
                    std::to_string(it->second));
    }
    const ojson& coeffs = r.field(entry, p, "coeffs", true);
    if (!coeffs.is_object()) r.fail(p + "/coeffs", "expected an object mapping basis index to coefficient");
    Vector value = Vector::Zero(n);
    for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
      const std::string cp = p + "/coeffs/" + it.key();
      int k = 0;
      std::size_t used = 0;
      try {
        k = std::stoi(it.key(), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != it.key().size()) r.fail(cp, "coefficient key '" + it.key() + "' is not an integer");
      if (k < 1 || k > n) r.fail(cp, "index " + std::to_string(k) + " out of range 1.." + std::to_string(n));
      value(k - 1) = r.number(it.value(), cp);
    }
    terms.push_back({i - 1, j - 1, value});
  }

  AlgebraFile out;
  out.algebra = LieAlgebra::from_brackets(n, terms);
  const double c = out.algebra.max_constant();
  const double jd = jacobi_defect(out.algebra);
  if (jd > tol * scale_of({c * c})) {
    std::ostringstream os;
    os << "brackets violate the Jacobi identity (defect " << jd << ")";
    r.fail("/brackets", os.str());
  }

  const ojson& metric = r.field(doc, "", "metric", false);
  if (!metric.is_null()) {
    const Matrix g = r.matrix(metric, "/metric", n);
    if (max_abs(Matrix(g - g.transpose())) > tol * scale_of({max_abs(g)})) r.fail("/metric", "metric is not symmetric");
    out.metric = Gram(g);
  }
  out.comment = r.comment(doc);
  return out;
}

std::string dump_algebra(const AlgebraFile& file) {
  const int n = file.algebra.dim();
  ojson doc;
  doc["dim"] = n;
  ojson brackets = ojson::array();
  for (const auto& t : file.algebra.brackets()) {
    ojson coeffs = ojson::object();
    for (int k = 0; k < n; ++k) {
      if (t.value(k) != 0.0) coeffs[std::to_string(k + 1)] = t.value(k);
    }
    brackets.push_back({{"i", t.i + 1}, {"j", t.j + 1}, {"coeffs", std::move(coeffs)}});
  }
  doc["brackets"] = std::move(brackets);
  if (file.metric) doc["metric"] = matrix_json(file.metric->matrix());
  if (!file.comment.empty()) doc["comment"] = file.comment;
  return doc.dump(2) + "\n";
}

ExtensionFile parse_extension(const std::string& text, const std::string& source, double tol) {
  const Reader r(text, source);
  const ojson& doc = r.doc();
  if (!doc.is_object()) r.fail("", "expected a JSON object");
  r.reject_unknown(doc, {"v_dim", "K", "D", "mu", "b", "basis_change", "comment"});
  const int v = r.integer(r.field(doc, "", "v_dim", true), "/v_dim");
  if (v < 0) r.fail("/v_dim", "v_dim must be non-negative");
  const Matrix k = r.matrix(r.field(doc, "", "K", true), "/K", v);
  const Matrix d = r.matrix(r.field(doc, "", "D", true), "/D", v);
  const double mu = r.number(r.field(doc, "", "mu", true), "/mu");
  const Vector b = r.vector(r.field(doc, "", "b", true), "/b", v);

  ExtensionFile out;
  const double skew_defect = max_abs(Matrix(k + k.transpose()));
  if (skew_defect > tol * scale_of({max_abs(k)})) {
    std::ostringstream os;
    os << source << ":" << r.line_of("/K") << ": K is not skew-symmetric (defect " << skew_defect
       << "); using (K - K^T)/2";
    out.warnings.push_back(os.str());
  }
  out.data = ExtensionData(k, d, mu, b);
  const ojson& bc = r.field(doc, "", "basis_change", false);
  if (!bc.is_null()) out.basis_change = r.matrix(bc, "/basis_change", v + 2);
  out.comment = r.comment(doc);
  return out;
}

std::string dump_extension(const ExtensionFile& file) {
  ojson doc;
  doc["v_dim"] = file.data.v_dim();
  doc["K"] = matrix_json(file.data.k);
  doc["D"] = matrix_json(file.data.d);
  doc["mu"] = file.data.mu;
  doc["b"] = vector_json(file.data.b);
  if (file.basis_change) doc["basis_change"] = matrix_json(*file.basis_change);
  if (!file.comment.empty()) doc["comment"] = file.comment;
  return doc.dump(2) + "\n";
}

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

AlgebraFile read_algebra_file(const std::string& path, double tol) {
  return parse_algebra(read_text(path), path == "-" ? "<stdin>" : path, tol);
}

void write_algebra_file(const std::string& path, const AlgebraFile& file) { write_text(path, dump_algebra(file)); }

ExtensionFile read_extension_file(const std::string& path, double tol) {
  return parse_extension(read_text(path), path == "-" ? "<stdin>" : path, tol);
}

void write_extension_file(const std::string& path, const ExtensionFile& file) {
  write_text(path, dump_extension(file));
}

}  // namespace mlie
