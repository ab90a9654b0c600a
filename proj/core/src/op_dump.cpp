#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "commring/error.hpp"
#include "commring/matrix_diff_op.hpp"

namespace commring {

namespace {

constexpr const char* kMagic = "commring-operator 1";

void put_double(std::string& out, double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

double get_double(const std::string& tok) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    fail(ErrorCode::ConfigInvalid, "malformed number '" + tok + "' in operator dump");
  }
  return v;
}

bool is_positive_zero(double v) { return std::bit_cast<std::uint64_t>(v) == 0U; }

}  // namespace

std::string dump_operator(const MatrixDiffOp& op) {
  std::string out = kMagic;
  out += "\nN " + std::to_string(op.n()) + " vars " + std::to_string(op.vars()) + " order " +
         std::to_string(op.order()) + " J " + std::to_string(op.jet_order()) + "\n";
  out += "# alpha... i j delta... re im\n";
  for (int ia = 0; ia < op.derivs().size(); ++ia) {
    for (int d = 0; d < op.jets().size(); ++d) {
      const CMat& m = op.coeff(ia, d);
      for (int i = 0; i < op.n(); ++i) {
        for (int j = 0; j < op.n(); ++j) {
          const cplx v = m(i, j);
          if (is_positive_zero(v.real()) && is_positive_zero(v.imag())) continue;
          for (int a : op.derivs().index(ia)) out += std::to_string(a) + ' ';
          out += std::to_string(i) + ' ' + std::to_string(j) + ' ';
          for (int e : op.jets().index(d)) out += std::to_string(e) + ' ';
          put_double(out, v.real());
          out += ' ';
          put_double(out, v.imag());
          out += '\n';
        }
      }
    }
  }
  return out;
}

MatrixDiffOp parse_operator(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kMagic) fail(ErrorCode::ConfigInvalid, "missing operator dump header");
  std::string kn, kv, ko, kj;
  int n = 0, vars = 0, ord = 0, jo = 0;
  if (!std::getline(in, line)) fail(ErrorCode::ConfigInvalid, "missing operator shape line");
  {
    std::istringstream hs(line);
    hs >> kn >> n >> kv >> vars >> ko >> ord >> kj >> jo;
    if (!hs || kn != "N" || kv != "vars" || ko != "order" || kj != "J") {
      fail(ErrorCode::ConfigInvalid, "malformed operator shape line");
    }
  }
  MatrixDiffOp op(n, vars, ord, jo);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    MultiIndex a(vars), d(vars);
    int i = 0, j = 0;
    for (int& v : a) ls >> v;
    ls >> i >> j;
    for (int& v : d) ls >> v;
    std::string re, im;
    ls >> re >> im;
    if (!ls) fail(ErrorCode::ConfigInvalid, "malformed operator record: " + line);
    const int ia = op.derivs().find(a);
    const int id = op.jets().find(d);
    if (ia < 0 || id < 0 || i < 0 || j < 0 || i >= n || j >= n) {
      fail(ErrorCode::IndexOutOfRange, "operator record outside declared shape");
    }
    op.coeff(ia, id)(i, j) = cplx(get_double(re), get_double(im));
  }
  return op;
}

void write_operator(const MatrixDiffOp& op, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
  f << dump_operator(op);
}

MatrixDiffOp read_operator(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::ConfigInvalid, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_operator(ss.str());
}

}  // namespace commring
