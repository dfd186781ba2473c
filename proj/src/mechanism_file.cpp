#include "pocmob/mechanism_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>

namespace pocmob {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

std::string_view relation_token(RelationCode code) {
  switch (code) {
    case RelationCode::Arbitrary: return "-";
    case RelationCode::Parallel: return "||";
    case RelationCode::Perpendicular: return "_|_";
    case RelationCode::Coaxial: return "/";
    case RelationCode::Coplanar: return "#";
    case RelationCode::CommonPoint: return "*";
  }
  return "?";
}

namespace {

enum class Tok { Word, Int, Rel, Colon };

struct Token {
  Tok kind;
  std::string text;
  int column;
  int value = 0;  // integer value or relation code
};

struct Line {
  int number;
  std::string raw;
  std::vector<Token> tokens;
};

std::vector<Token> lex(const std::string& raw, int number) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return static_cast<int>(k) + 1; };
  auto starts = [&](std::string_view s) { return raw.compare(i, s.size(), s) == 0; };
  while (i < raw.size()) {
    const char c = raw[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t b = i;
      while (i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i]))) ++i;
      Token t{Tok::Int, raw.substr(b, i - b), at(b)};
      auto [p, ec] = std::from_chars(raw.data() + b, raw.data() + i, t.value);
      if (ec != std::errc{}) throw ParseError(number, at(b), "integer out of range");
      out.push_back(std::move(t));
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t b = i;
      while (i < raw.size() && std::isalnum(static_cast<unsigned char>(raw[i]))) ++i;
      out.push_back({Tok::Word, raw.substr(b, i - b), at(b)});
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", at(i)});
      ++i;
    } else {
      static constexpr std::pair<std::string_view, RelationCode> kRel[] = {
          {"||", RelationCode::Parallel}, {"_|_", RelationCode::Perpendicular}, {"/", RelationCode::Coaxial},
          {"*", RelationCode::CommonPoint}, {"#", RelationCode::Coplanar},      {"-", RelationCode::Arbitrary},
      };
      bool hit = false;
      for (const auto& [s, code] : kRel) {
        if (!starts(s)) continue;
        out.push_back({Tok::Rel, std::string(s), at(i), static_cast<int>(code)});
        i += s.size();
        hit = true;
        break;
      }
      if (!hit) throw ParseError(number, at(i), std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

std::string describe(const Token& t) {
  return t.kind == Tok::Colon ? "':'" : "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      lines_.push_back({number, raw, lex(raw, number)});
    }
    last_line_ = std::max(number, 1);
  }

  ParsedMechanism run() {
    ParsedMechanism out;
    parse_header(out.mechanism);
    while (!done()) {
      const auto& head = cur().tokens.front();
      if (head.kind == Tok::Word && head.text == "leg") parse_leg(out);
      else if (head.kind == Tok::Word && head.text == "platform") parse_platform(out.mechanism);
      else fail(head, "expected 'leg' or 'platform', found " + describe(head));
    }
    finish(out);
    return out;
  }

 private:
  bool done() const { return pos_ >= lines_.size(); }
  const Line& cur() const { return lines_[pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(cur().number, t.column, msg); }
  [[noreturn]] void fail_end(const Line& l, const std::string& msg) const {
    throw ParseError(l.number, static_cast<int>(l.raw.find_last_not_of(" \t\r") + 2), msg);
  }

  const Token& expect(std::size_t i, Tok kind, const char* what) const {
    const auto& l = cur();
    if (i >= l.tokens.size()) fail_end(l, std::string("expected ") + what);
    if (l.tokens[i].kind != kind) fail(l.tokens[i], std::string("expected ") + what + ", found " + describe(l.tokens[i]));
    return l.tokens[i];
  }

  void expect_end(std::size_t i) const {
    if (i < cur().tokens.size()) fail(cur().tokens[i], "unexpected " + describe(cur().tokens[i]));
  }

  void parse_header(MechanismTopology& mech) {
    if (done()) throw ParseError(last_line_, 1, "expected 'mechanism'");
    const auto& head = cur().tokens.front();
    if (head.kind != Tok::Word || head.text != "mechanism") fail(head, "expected 'mechanism'");
    const auto& raw = cur().raw;
    const auto b = raw.find_first_not_of(" \t", head.column - 1 + head.text.size());
    if (b == std::string::npos) fail_end(cur(), "expected mechanism name");
    mech.name = raw.substr(b, raw.find_last_not_of(" \t\r") + 1 - b);
    header_line_ = cur().number;
    ++pos_;
  }

  // Rows of integers following a block header; the first row fixes the size.
  IntMatrix parse_matrix(int header_line) {
    if (done() || cur().tokens.front().kind != Tok::Int)
      throw ParseError(done() ? last_line_ : cur().number, 1, "expected matrix rows after line " + std::to_string(header_line));
    const auto n = cur().tokens.size();
    if (n > kMaxJoints) fail(cur().tokens[kMaxJoints], "matrix wider than 6 columns");
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (done() || cur().tokens.front().kind != Tok::Int)
        throw ParseError(done() ? last_line_ : cur().number, 1,
                         "expected " + std::to_string(n) + " matrix rows, found " + std::to_string(r));
      const auto& toks = cur().tokens;
      for (std::size_t c = 0; c < toks.size(); ++c) {
        if (toks[c].kind != Tok::Int) fail(toks[c], "expected integer, found " + describe(toks[c]));
        if (c >= n) fail(toks[c], "row has more than " + std::to_string(n) + " entries");
        m(r, c) = toks[c].value;
      }
      if (toks.size() < n) fail_end(cur(), "row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
      ++pos_;
    }
    return m;
  }

  RelationCode relation_of(const Token& t) const {
    if (t.kind == Tok::Rel) return static_cast<RelationCode>(t.value);
    if (t.kind == Tok::Int && is_relation_code(t.value)) return static_cast<RelationCode>(t.value);
    fail(t, "expected relation token, found " + describe(t));
  }

  void parse_leg(ParsedMechanism& out) {
    auto& mech = out.mechanism;
    const int line = cur().number;
    const auto& label = expect(1, Tok::Int, "leg label");
    const int want = static_cast<int>(mech.legs.size()) + 1;
    if (label.value != want)
      fail(label, "leg label " + label.text + " out of order, expected " + std::to_string(want));
    expect(2, Tok::Colon, "':'");
    leg_lines_[want] = line;

    if (cur().tokens.size() == 3) {
      ++pos_;
      try {
        mech.legs.push_back(decode_leg(parse_matrix(line), want));
      } catch (const TopologyError& e) {
        throw ParseError(line, 1, "leg " + std::to_string(want) + ": " + e.what());
      }
      return;
    }

    // Joint string: J (REL J)*.
    std::vector<JointKind> joints;
    std::vector<RelationCode> links;
    const auto& toks = cur().tokens;
    for (std::size_t i = 3; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if ((i - 3) % 2 == 0) {
        if (t.kind != Tok::Word || (t.text != "R" && t.text != "P")) fail(t, "expected joint R or P, found " + describe(t));
        joints.push_back(t.text == "R" ? JointKind::Revolute : JointKind::Prismatic);
        if (joints.size() > kMaxJoints) fail(t, "leg has more than 6 joints");
      } else {
        links.push_back(relation_of(t));
      }
    }
    if (links.size() == joints.size()) fail_end(cur(), "expected joint after relation token");
    ++pos_;

    LegTopology leg;
    leg.label = want;
    leg.joints = joints;
    leg.relations = RelationMatrix(joints.size());
    for (std::size_t k = 0; k < links.size(); ++k) leg.relations.set(k, k + 1, links[k]);

    std::map<std::pair<std::size_t, std::size_t>, bool> given;
    if (!done() && cur().tokens.front().kind == Tok::Word && cur().tokens.front().text == "relations") {
      expect(1, Tok::Colon, "':'");
      expect_end(2);
      ++pos_;
      if (done() || cur().tokens.front().kind != Tok::Int) {
        throw ParseError(done() ? last_line_ : cur().number, 1, "expected 'i j relation' lines");
      }
      while (!done() && cur().tokens.front().kind == Tok::Int) {
        const auto& a = expect(0, Tok::Int, "joint index");
        const auto& b = expect(1, Tok::Int, "joint index");
        if (cur().tokens.size() < 3) fail_end(cur(), "expected relation token");
        const auto code = relation_of(cur().tokens[2]);
        expect_end(3);
        const auto n = joints.size();
        for (const auto* t : {&a, &b})
          if (t->value < 1 || static_cast<std::size_t>(t->value) > n)
            fail(*t, "joint index " + t->text + " outside 1.." + std::to_string(n));
        const auto i = static_cast<std::size_t>(std::min(a.value, b.value) - 1);
        const auto j = static_cast<std::size_t>(std::max(a.value, b.value) - 1);
        if (i == j) fail(b, "a joint has no relation with itself");
        if (j == i + 1) fail(a, "adjacent pair " + a.text + " " + b.text + " is set by the joint string");
        if (given.count({i, j})) fail(a, "pair " + a.text + " " + b.text + " given twice");
        given[{i, j}] = true;
        leg.relations.set(i, j, code);
        ++pos_;
      }
    }

    const auto n = joints.size();
    const std::size_t nonadjacent = n > 2 ? (n - 1) * (n - 2) / 2 : 0;
    if (given.size() < nonadjacent)
      out.warnings.push_back("line " + std::to_string(line) + ": leg " + std::to_string(want) + ": " +
                             std::to_string(nonadjacent - given.size()) +
                             " non-adjacent joint pairs default to arbitrary");
    mech.legs.push_back(std::move(leg));
  }

  void parse_platform(MechanismTopology& mech) {
    const int line = cur().number;
    const auto& side = expect(1, Tok::Word, "'fixed' or 'moving'");
    if (side.text != "fixed" && side.text != "moving") fail(side, "expected 'fixed' or 'moving', found " + describe(side));
    const bool moving = side.text == "moving";
    if ((moving ? moving_line_ : fixed_line_) != 0) fail(side, side.text + " platform given twice");
    expect(2, Tok::Colon, "':'");
    expect_end(3);
    ++pos_;
    const auto ps = moving ? PlatformSide::Moving : PlatformSide::Fixed;
    try {
      (moving ? mech.moving : mech.fixed) = decode_platform(parse_matrix(line), ps);
    } catch (const TopologyError& e) {
      throw ParseError(line, 1, side.text + " platform: " + e.what());
    }
    (moving ? moving_line_ : fixed_line_) = line;
  }

  void finish(ParsedMechanism& out) {
    auto& mech = out.mechanism;
    for (auto* line : {&fixed_line_, &moving_line_}) {
      if (*line) continue;
      const bool moving = line == &moving_line_;
      if (!mech.legs.empty())
        (moving ? mech.moving : mech.fixed) =
            uniform_platform(mech.legs, moving ? PlatformSide::Moving : PlatformSide::Fixed);
      out.warnings.push_back(std::string(moving ? "moving" : "fixed") +
                             " platform not given; its relations default to arbitrary");
    }
    const auto errors = validate_mechanism(mech);
    if (errors.empty()) return;
    const auto& e = errors.front();
    int line = header_line_;
    if (e.rfind("leg ", 0) == 0) {
      const int label = std::atoi(e.c_str() + 4);
      if (leg_lines_.count(label)) line = leg_lines_[label];
    } else if (e.rfind("moving", 0) == 0 && moving_line_) {
      line = moving_line_;
    } else if (e.rfind("fixed", 0) == 0 && fixed_line_) {
      line = fixed_line_;
    }
    throw ParseError(line, 1, e);
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int last_line_ = 1;
  int header_line_ = 1;
  int fixed_line_ = 0;
  int moving_line_ = 0;
  std::map<int, int> leg_lines_;
};

void write_matrix(std::ostringstream& os, const IntMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << " ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << ' ' << m(r, c);
    os << '\n';
  }
}

}  // namespace

ParsedMechanism parse_mechanism(std::string_view text) { return Parser(text).run(); }

std::string format_mechanism(const MechanismTopology& mech) {
  std::ostringstream os;
  os << "mechanism " << (mech.name.empty() ? "unnamed" : mech.name) << '\n';
  for (const auto& leg : mech.legs) {
    os << "leg " << leg.label << ":\n";
    write_matrix(os, encode_leg(leg));
  }
  os << "platform fixed:\n";
  write_matrix(os, encode_platform(mech.fixed));
  os << "platform moving:\n";
  write_matrix(os, encode_platform(mech.moving));
  return os.str();
}

}  // namespace pocmob
