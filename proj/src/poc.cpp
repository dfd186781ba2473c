#include "pocmob/poc.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace pocmob {

int PocMatrix::xi_t() const { return std::accumulate(t.begin(), t.end(), 0); }
int PocMatrix::xi_r() const { return std::accumulate(r.begin(), r.end(), 0); }

PocMatrix poc_or(const std::vector<PocMatrix>& parts) {
  PocMatrix out;
  if (parts.empty()) return out;
  out.columns = parts.front().columns;
  out.translation_owner = parts.front().translation_owner;
  out.rotation_owner = parts.front().rotation_owner;
  for (const auto& p : parts) {
    if (!out.translation_owner) out.translation_owner = p.translation_owner;
    if (!out.rotation_owner) out.rotation_owner = p.rotation_owner;
    for (int c = 0; c < kPocColumns; ++c) {
      const bool used = out.t[c] || out.r[c];
      const bool adds = p.t[c] || p.r[c];
      if (used && adds)
        throw OverlappingSupport("poc_or: column " + std::to_string(c + 1) + " is occupied by two parts");
      if (!adds) continue;
      out.t[c] = p.t[c];
      out.r[c] = p.r[c];
      out.t_dir[c] = p.t_dir[c];
      out.r_dir[c] = p.r_dir[c];
      out.family[c] = p.family[c];
    }
  }
  return out;
}

namespace {

// Directions for cells that were filled in by hand without a descriptor.
DirectionDescriptor cell_space(int count, const DirectionDescriptor& dir, AxisRef joint, char row) {
  if (dir.rank > 0 || count == 0) return dir;
  if (count >= 3) return DirectionDescriptor::full();
  std::vector<Line> span;
  for (int k = 0; k < count; ++k)
    span.push_back(Line::generic(joint, {}, std::string(1, row) + "(" + line_key(Line::along(joint)) + ")" +
                                               std::to_string(k)));
  return count == 1 ? DirectionDescriptor::line(span.front()) : DirectionDescriptor{2, span, std::nullopt};
}

DirectionDescriptor row_view(const std::array<int, kPocColumns>& row, const std::array<DirectionDescriptor, kPocColumns>& dirs,
                             int owner, char tag, const DirectionContext& ctx) {
  if (row[0] >= 3) return dirs[0].rank == 3 ? dirs[0] : DirectionDescriptor::full();
  DirectionDescriptor s;
  for (int c = 0; c < kPocColumns; ++c)
    if (row[c] > 0) s = subspace_sum(s, cell_space(row[c], dirs[c], {owner, c + 1}, tag), ctx);
  return s;
}

int overflow_priority(SegmentFamily f) {
  switch (f) {
    case SegmentFamily::Single:
    case SegmentFamily::S2: return 0;
    case SegmentFamily::G2:
    case SegmentFamily::G3: return 1;
    case SegmentFamily::S3: return 2;
    case SegmentFamily::None: break;
  }
  return 3;
}

bool same_axis_line(const Line& a, const Line& b, const RelationGraph& g) {
  if (a.kind != Line::Kind::Axis || b.kind != Line::Kind::Axis) return a == b;
  return g.relation(a.axis, b.axis) == RelationCode::Coaxial || g.resolve(a.axis) == g.resolve(b.axis);
}

void add_translation(PocMatrix& m, int col, const Line& l, const DirectionContext& ctx) {
  m.t_dir[col] = subspace_sum(cell_space(m.t[col], m.t_dir[col], {m.translation_owner, col + 1}, 't'),
                              DirectionDescriptor::line(l), ctx);
  m.t[col] = m.t_dir[col].rank;
}

// The translation that turns a rotation about one line into a rotation about a
// parallel, distinct line: some direction in their common normal plane.
Line offset_line(const Line& a, const Line& b) {
  if (a.kind == Line::Kind::Axis && b.kind == Line::Kind::Axis) return Line::offset(b.axis, a.axis, b.axis);
  return Line::generic(b.axis, {a.axis}, "off(" + line_key(a) + "," + line_key(b) + ")");
}

void clear_row(std::array<int, kPocColumns>& row, std::array<DirectionDescriptor, kPocColumns>& dirs) {
  row.fill(0);
  dirs.fill(DirectionDescriptor::none());
}

void make_full(std::array<int, kPocColumns>& row, std::array<DirectionDescriptor, kPocColumns>& dirs) {
  clear_row(row, dirs);
  row[0] = 3;
  dirs[0] = DirectionDescriptor::full();
}

}  // namespace

PocMatrix normalize(const PocMatrix& in, const RelationGraph& g) {
  const DirectionContext ctx(g, RelationPolicy::GeneralPosition);
  PocMatrix m = in;
  if (m.translation_owner == 0) m.translation_owner = m.rotation_owner;
  if (m.rotation_owner == 0) m.rotation_owner = m.translation_owner;

  // Rotations: keep one line per independent direction.
  if (m.r[0] < 3) {
    struct Kept {
      int col;
      Line line;
    };
    std::vector<Kept> kept;
    std::vector<Kept> deferred;
    std::vector<Line> seen;
    DirectionDescriptor span;
    for (int c = 0; c < kPocColumns; ++c) {
      if (m.r[c] == 0) continue;
      const auto cell = cell_space(m.r[c], m.r_dir[c], {m.rotation_owner, c + 1}, 'r');
      std::vector<Line> lines(cell.span.begin(), cell.span.end());
      if (static_cast<int>(lines.size()) < cell.rank)
        lines = {cell.span.empty() ? Line::along({m.rotation_owner, c + 1}) : cell.span.front()};
      lines.resize(std::min<std::size_t>(lines.size(), static_cast<std::size_t>(cell.rank)));
      m.r[c] = 0;
      m.r_dir[c] = DirectionDescriptor::none();
      std::vector<Line> mine;
      for (const auto& line : lines) {
        auto twin = std::find_if(kept.begin(), kept.end(),
                                 [&](const Kept& k) { return ctx.parallel(k.line, line) == Tri::Yes; });
        const bool repeated =
            std::any_of(seen.begin(), seen.end(), [&](const Line& s) { return same_axis_line(s, line, g); });
        seen.push_back(line);
        if (repeated) {
          m.passive.push_back(line);
        } else if (twin != kept.end()) {
          m.passive.push_back(line);
          add_translation(m, c, offset_line(twin->line, line), ctx);
        } else if (span.rank == 3) {
          deferred.push_back({c, line});
        } else if (span.rank == 2 && ctx.contains(span, line) == Tri::Yes) {
          m.passive.push_back(line);
          add_translation(m, c, Line::generic(line.axis, {}, "pl(" + line_key(line) + ")"), ctx);
        } else {
          span = subspace_sum(span, DirectionDescriptor::line(line), ctx);
          kept.push_back({c, line});
          mine.push_back(line);
        }
      }
      m.r[c] = static_cast<int>(mine.size());
      if (mine.size() == lines.size() && mine.size() > 1) m.r_dir[c] = cell;
      else if (mine.size() == 1) m.r_dir[c] = DirectionDescriptor::line(mine.front());
      else if (mine.size() == 2) m.r_dir[c] = ctx.plane_through(mine[0], mine[1]);
    }

    if (!deferred.empty()) {
      std::vector<int> candidates;
      for (const auto& d : deferred) candidates.push_back(d.col);
      for (const auto& k : kept) candidates.push_back(k.col);
      std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
        const int pa = overflow_priority(m.family[a]), pb = overflow_priority(m.family[b]);
        return pa != pb ? pa < pb : a < b;
      });
      std::vector<std::optional<Line>> lines(kPocColumns);
      for (const auto& k : kept)
        if (!lines[k.col]) lines[k.col] = k.line;
      for (const auto& d : deferred) {
        if (!lines[d.col]) lines[d.col] = d.line;
        m.passive.push_back(d.line);
      }
      for (std::size_t i = 0; i < deferred.size(); ++i) {
        const int c = candidates[i];
        add_translation(m, c, Line::generic(lines[c]->axis, {}, "ovf(" + line_key(*lines[c]) + ")"), ctx);
      }
    }
    if (span.rank == 3) {
      make_full(m.r, m.r_dir);
      for (const auto& k : kept) m.r_dir[0].span.push_back(k.line);
    }
  }

  // Translations: each cell counts only what it adds to the span so far.
  if (m.t[0] < 3 || m.t_dir[0].rank != 3) {
    DirectionDescriptor span;
    for (int c = 0; c < kPocColumns; ++c) {
      if (m.t[c] == 0) continue;
      const auto cell = cell_space(m.t[c], m.t_dir[c], {m.translation_owner, c + 1}, 't');
      const int before = span.rank;
      span = subspace_sum(span, cell, ctx);
      m.t[c] = span.rank - before;
      m.t_dir[c] = m.t[c] ? cell : DirectionDescriptor::none();
    }
    if (span.rank == 3) make_full(m.t, m.t_dir);
  }

  if (m.xi_t() == 0) m.translation_owner = 0;
  if (m.xi_r() == 0) m.rotation_owner = 0;
  return m;
}

DirectionDescriptor translation_view(const PocMatrix& m, const RelationGraph& g) {
  return row_view(m.t, m.t_dir, m.translation_owner, 't', DirectionContext(g));
}

DirectionDescriptor rotation_view(const PocMatrix& m, const RelationGraph& g) {
  return row_view(m.r, m.r_dir, m.rotation_owner, 'r', DirectionContext(g));
}

Intersection intersect_translation(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                   const DirectionContext& ctx) {
  return subspace_intersection(a, b, ctx);
}

namespace {

struct ParallelPair {
  Line a, b;
};

// Rotation lines of `a` and `b` that are parallel but not on one axis.
std::vector<ParallelPair> distinct_parallel(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                            const DirectionContext& ctx) {
  std::vector<ParallelPair> out;
  for (const auto& la : a.span)
    for (const auto& lb : b.span) {
      if (same_axis_line(la, lb, ctx.graph())) continue;
      if (ctx.decide(ctx.parallel(la, lb), line_key(la) + " || " + line_key(lb))) out.push_back({la, lb});
    }
  return out;
}

bool shares_axis(const DirectionDescriptor& a, const DirectionDescriptor& b, const Line& l, const RelationGraph& g) {
  auto on = [&](const DirectionDescriptor& d) {
    return std::any_of(d.span.begin(), d.span.end(), [&](const Line& x) { return same_axis_line(x, l, g); });
  };
  return on(a) && on(b);
}

}  // namespace

Intersection intersect_rotation(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                const DirectionContext& ctx, const DirectionDescriptor* absorbing) {
  const auto pairs = distinct_parallel(a, b, ctx);
  if (pairs.empty()) return subspace_intersection(a, b, ctx);

  // A common direction carried by distinct parallel axes survives only when
  // the offset between the axes is absorbed.
  std::vector<Line> kept;
  bool lost = false;
  for (const auto& p : pairs) {
    const Line off = offset_line(p.a, p.b);
    if (absorbing && ctx.decide(ctx.contains(*absorbing, off), "the offset lies in the translation space"))
      kept.push_back(p.a);
    else
      lost = true;
  }
  if (!lost) {
    if (a.rank == 1) return {a, Provenance::First};
    return subspace_intersection(a, b, ctx);
  }
  for (const auto& l : a.span)
    if (shares_axis(a, b, l, ctx.graph()) && std::find(kept.begin(), kept.end(), l) == kept.end()) kept.push_back(l);
  if (kept.empty()) return {DirectionDescriptor::none(), Provenance::Derived};
  if (kept.size() == 1) return {DirectionDescriptor::line(kept.front()), Provenance::Derived};
  return {ctx.plane_through(kept[0], kept[1]), Provenance::Derived};
}

int union_translation_dim(const DirectionDescriptor& a, const DirectionDescriptor& b, const DirectionContext& ctx) {
  return subspace_sum(a, b, ctx).rank;
}

int union_rotation_dim(const DirectionDescriptor& a, const DirectionDescriptor& b, const DirectionContext& ctx) {
  return subspace_sum(a, b, ctx).rank;
}

namespace {

// Translations a union of two rotation spaces generates beyond the rotations
// themselves. `parallel` come from one direction carried by distinct axes;
// `other` from a line that adds no new rotation direction.
struct Surplus {
  std::vector<Line> parallel;
  std::vector<Line> other;
};

// Whether every axis line in `lines` passes through one point. Meeting axes
// are joined transitively; pairwise meeting axes in general directions are
// concurrent.
bool concurrent(const std::vector<Line>& lines, const RelationGraph& g) {
  std::vector<AxisRef> axes;
  for (const auto& l : lines) {
    if (l.kind != Line::Kind::Axis) return false;
    axes.push_back(g.resolve(l.axis));
  }
  if (axes.size() < 2) return true;
  std::vector<AxisRef> group{axes.front()};
  for (std::size_t i = 0; i < group.size(); ++i)
    for (const auto& n : g.nodes()) {
      if (std::find(group.begin(), group.end(), n) != group.end()) continue;
      if (g.seeded(group[i], n) == RelationCode::CommonPoint || g.relation(group[i], n) == RelationCode::Coaxial)
        group.push_back(n);
    }
  return std::all_of(axes.begin(), axes.end(),
                     [&](const AxisRef& a) { return std::find(group.begin(), group.end(), a) != group.end(); });
}

Surplus rotation_surplus(const DirectionDescriptor& ra, const DirectionDescriptor& rb, const std::vector<Line>& pa,
                         const std::vector<Line>& pb, const DirectionContext& ctx) {
  Surplus out;
  for (const auto& p : distinct_parallel(ra, rb, ctx)) out.parallel.push_back(offset_line(p.a, p.b));
  const auto& g = ctx.graph();
  auto lines_of = [](const DirectionDescriptor& d) { return d.rank < 3 || d.span.size() == 3; };
  DirectionDescriptor span = lines_of(ra) && lines_of(rb) ? DirectionDescriptor::none() : DirectionDescriptor::full();
  std::vector<Line> kept;
  for (const auto* side : {&ra, &rb})
    for (const auto& l : side->span) {
      const auto& other = side == &ra ? pb : pa;
      if (std::any_of(other.begin(), other.end(), [&](const Line& p) { return same_axis_line(p, l, g); })) continue;
      if (std::any_of(kept.begin(), kept.end(), [&](const Line& k) { return ctx.parallel(k, l) == Tri::Yes; })) continue;
      auto with = kept;
      with.push_back(l);
      const bool through_one_point = concurrent(with, g);
      if (span.rank == 3) {
        if (!through_one_point) out.other.push_back(Line::generic(l.axis, {}, "ovf(" + line_key(l) + ")"));
      } else if (span.rank == 2 && ctx.contains(span, l) == Tri::Yes) {
        if (!through_one_point) out.other.push_back(Line::generic(l.axis, {}, "pl(" + line_key(l) + ")"));
      } else {
        span = subspace_sum(span, DirectionDescriptor::line(l), ctx);
        kept.push_back(l);
      }
    }
  return out;
}

DirectionDescriptor absorb(DirectionDescriptor space, const std::vector<Line>& offsets, const DirectionContext& ctx) {
  for (const auto& off : offsets) {
    if (space.rank == 3) break;
    if (!ctx.decide(ctx.contains(space, off), "the offset lies in the translation space"))
      space = subspace_sum(space, DirectionDescriptor::line(off), ctx);
  }
  return space;
}

// `d` with its rank lowered by `by`; the remaining directions are unknown
// members of `d`.
DirectionDescriptor shrink(const DirectionDescriptor& d, int by) {
  const int rank = d.rank - by;
  if (rank <= 0) return DirectionDescriptor::none();
  if (rank == d.rank) return d;
  const AxisRef home = d.span.empty() ? (d.normal ? d.normal->axis : AxisRef{}) : d.span.front().axis;
  std::vector<Line> span;
  for (int k = 0; k < rank; ++k) span.push_back(Line::generic(home, {}, "ix(" + line_key(Line::along(home)) + ")" + std::to_string(k)));
  if (rank == 1) return DirectionDescriptor::line(span.front());
  return {2, span, d.normal};
}

}  // namespace

LoopRank loop_rank(const PocMatrix& sub_pm, const PocMatrix& next_leg, const DirectionContext& ctx) {
  const auto& g = ctx.graph();
  const auto ta = translation_view(sub_pm, g), tb = translation_view(next_leg, g);
  const auto ra = rotation_view(sub_pm, g), rb = rotation_view(next_leg, g);
  LoopRank out;
  out.xi_r = union_rotation_dim(ra, rb, ctx);
  const auto surplus = rotation_surplus(ra, rb, sub_pm.passive, next_leg.passive, ctx);
  auto total = absorb(subspace_sum(ta, tb, ctx), surplus.parallel, ctx);
  total = absorb(total, surplus.other, ctx);
  out.xi_t = total.rank;
  return out;
}

namespace {

void place_row(const Intersection& x, const PocMatrix& a, const PocMatrix& b, bool translation, PocMatrix& out,
               const RelationGraph& g) {
  auto& row = translation ? out.t : out.r;
  auto& dirs = translation ? out.t_dir : out.r_dir;
  auto& owner = translation ? out.translation_owner : out.rotation_owner;
  clear_row(row, dirs);
  owner = 0;
  if (x.space.rank == 0) return;
  if (x.from != Provenance::Derived) {
    const PocMatrix& src = x.from == Provenance::First ? a : b;
    row = translation ? src.t : src.r;
    dirs = translation ? src.t_dir : src.r_dir;
    owner = translation ? src.translation_owner : src.rotation_owner;
    for (int c = 0; c < kPocColumns; ++c)
      if (row[c]) out.family[c] = src.family[c];
    return;
  }
  if (x.space.rank == 3) {
    make_full(row, dirs);
    owner = b.translation_owner ? b.translation_owner : b.rotation_owner;
    return;
  }
  // A derived line (or plane) sits in the column of the joint it is attributed to.
  const AxisRef home = g.resolve(x.space.span.empty() ? x.space.normal->axis : x.space.span.front().axis);
  const int col = std::clamp(home.joint - 1, 0, kPocColumns - 1);
  row[col] = x.space.rank;
  dirs[col] = x.space;
  owner = home.leg;
}

}  // namespace

PocMatrix intersect_poc(const PocMatrix& a, const PocMatrix& b, const DirectionContext& ctx) {
  const auto& g = ctx.graph();
  const auto ta = translation_view(a, g), tb = translation_view(b, g);
  const auto ra = rotation_view(a, g), rb = rotation_view(b, g);
  PocMatrix out;
  out.columns = kPocColumns;
  const auto tx = intersect_translation(ta, tb, ctx);
  const auto tsum = subspace_sum(ta, tb, ctx);
  auto rx = intersect_rotation(ra, rb, ctx, &tsum);
  // Each surplus translation the loop cannot absorb removes one common rotation.
  const auto surplus = rotation_surplus(ra, rb, a.passive, b.passive, ctx);
  auto all = surplus.parallel;
  all.insert(all.end(), surplus.other.begin(), surplus.other.end());
  const int lost = absorb(tsum, all, ctx).rank - tsum.rank;
  const int target = std::max(0, subspace_intersection(ra, rb, ctx).space.rank - lost);
  if (rx.space.rank > target) {
    rx = {shrink(rx.space, rx.space.rank - target), Provenance::Derived};
  } else if (rx.space.rank < target) {
    // Refill from common rotation lines whose axis pairing costs nothing.
    auto span = rx.space;
    for (const auto& l : ra.span) {
      if (span.rank == target) break;
      if (rb.rank < 3 && ctx.contains(rb, l) != Tri::Yes) continue;
      if (ctx.contains(span, l) == Tri::Yes) continue;
      const bool paired = std::any_of(rb.span.begin(), rb.span.end(), [&](const Line& m) {
        return !same_axis_line(l, m, g) && ctx.parallel(l, m) == Tri::Yes &&
               ctx.contains(tsum, offset_line(l, m)) != Tri::Yes;
      });
      if (paired) continue;
      span = subspace_sum(span, DirectionDescriptor::line(l), ctx);
    }
    if (span.rank < target) span = shrink(subspace_intersection(ra, rb, ctx).space, lost);
    rx = {span, Provenance::Derived};
  }
  place_row(tx, a, b, true, out, g);
  place_row(rx, a, b, false, out, g);
  return out;
}

std::string format_poc(const PocMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int c = 0; c < kPocColumns; ++c) os << (c ? " " : "") << m.t[c];
  os << ';';
  for (int c = 0; c < kPocColumns; ++c) os << ' ' << m.r[c];
  os << ']';
  return os.str();
}

std::string classify(const PocMatrix& m) {
  return std::to_string(m.xi_t()) + "T" + std::to_string(m.xi_r()) + "R";
}

}  // namespace pocmob
