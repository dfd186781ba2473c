#include "pocmob/direction.hpp"

#include <algorithm>
#include <set>

namespace pocmob {

Line Line::along(AxisRef a) { return Line{Kind::Axis, a, {}, {}, {}}; }

Line Line::generic(AxisRef attributed, std::vector<AxisRef> normal_to, std::string id) {
  std::sort(normal_to.begin(), normal_to.end());
  normal_to.erase(std::unique(normal_to.begin(), normal_to.end()), normal_to.end());
  return Line{Kind::Generic, attributed, std::move(normal_to), std::move(id), {}};
}

Line Line::offset(AxisRef attributed, AxisRef a, AxisRef b) {
  Line l = generic(attributed, {a}, "off(" + line_key(along(a)) + "," + line_key(along(b)) + ")");
  l.between = {a, b};
  return l;
}

std::vector<int> DirectionContext::normal_classes(const Line& l) const {
  std::set<int> out;
  for (const auto& a : l.normal_to) out.insert(g_->parallel_class(a));
  return {out.begin(), out.end()};
}

Line DirectionContext::canonical(const Line& l) const {
  if (l.kind == Line::Kind::Axis) return l;
  const auto normals = normal_classes(l);
  if (normals.size() < 2) return l;
  for (int c = 0; c < g_->class_count(); ++c) {
    const bool all = std::all_of(normals.begin(), normals.end(),
                                 [&](int n) { return g_->classes_perpendicular(c, n); });
    if (all) return Line::along(g_->representative(c));
  }
  return l;
}

namespace {

Tri from_relation_parallel(RelationCode r) {
  if (r == RelationCode::Parallel || r == RelationCode::Coaxial) return Tri::Yes;
  if (r == RelationCode::Perpendicular) return Tri::No;
  return Tri::Unknown;
}

Tri from_relation_perpendicular(RelationCode r) {
  if (r == RelationCode::Perpendicular) return Tri::Yes;
  if (r == RelationCode::Parallel || r == RelationCode::Coaxial) return Tri::No;
  return Tri::Unknown;
}

std::size_t shared(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

}  // namespace

Tri DirectionContext::parallel(const Line& a0, const Line& b0) const {
  const Line a = canonical(a0), b = canonical(b0);
  if (a.kind == Line::Kind::Axis && b.kind == Line::Kind::Axis)
    return from_relation_parallel(g_->relation(a.axis, b.axis));
  if (a.kind == Line::Kind::Generic && b.kind == Line::Kind::Generic) {
    if (a.id == b.id && a.normal_to == b.normal_to) return Tri::Yes;
    if (a.between.size() == 2 && b.between.size() == 2) {
      auto lines = [&](const Line& l) {
        const int p = g_->coaxial_class(l.between[0]), q = g_->coaxial_class(l.between[1]);
        return std::pair{std::min(p, q), std::max(p, q)};
      };
      if (lines(a) == lines(b)) return Tri::Yes;
    }
    const auto na = normal_classes(a), nb = normal_classes(b);
    return shared(na, nb) >= 2 ? Tri::Yes : Tri::No;
  }
  const Line& axis = a.kind == Line::Kind::Axis ? a : b;
  const Line& gen = a.kind == Line::Kind::Axis ? b : a;
  const int ca = g_->parallel_class(axis.axis);
  const auto normals = normal_classes(gen);
  if (std::binary_search(normals.begin(), normals.end(), ca)) return Tri::No;
  if (normals.size() >= 2 &&
      std::all_of(normals.begin(), normals.end(), [&](int n) { return g_->classes_perpendicular(ca, n); }))
    return Tri::Yes;
  return Tri::No;
}

Tri DirectionContext::perpendicular(const Line& a0, const Line& b0) const {
  const Line a = canonical(a0), b = canonical(b0);
  if (a.kind == Line::Kind::Axis && b.kind == Line::Kind::Axis)
    return from_relation_perpendicular(g_->relation(a.axis, b.axis));
  if (a.kind == Line::Kind::Generic && b.kind == Line::Kind::Generic) return Tri::No;
  const Line& axis = a.kind == Line::Kind::Axis ? a : b;
  const Line& gen = a.kind == Line::Kind::Axis ? b : a;
  const auto normals = normal_classes(gen);
  return std::binary_search(normals.begin(), normals.end(), g_->parallel_class(axis.axis)) ? Tri::Yes : Tri::No;
}

Tri DirectionContext::contains(const DirectionDescriptor& space, const Line& l) const {
  switch (space.rank) {
    case 0: return Tri::No;
    case 3: return Tri::Yes;
    case 1: return parallel(space.span.front(), l);
    default: break;
  }
  Tri acc = Tri::No;
  for (const auto& s : space.span) {
    const Tri t = parallel(l, s);
    if (t == Tri::Yes) return Tri::Yes;
    if (t == Tri::Unknown) acc = Tri::Unknown;
  }
  if (space.normal) return perpendicular(l, *space.normal);
  return acc;
}

Tri DirectionContext::planes_parallel(const DirectionDescriptor& p, const DirectionDescriptor& q) const {
  if (p.normal && q.normal) {
    const Tri t = parallel(*p.normal, *q.normal);
    if (t != Tri::No) return t;
  }
  bool unknown = false;
  auto all_in = [&](const DirectionDescriptor& outer, const DirectionDescriptor& inner) {
    if (inner.span.size() < 2) return false;
    bool all = true;
    for (const auto& s : inner.span) {
      const Tri t = contains(outer, s);
      if (t == Tri::Unknown) unknown = true;
      if (t != Tri::Yes) all = false;
    }
    return all;
  };
  if (all_in(p, q) || all_in(q, p)) return Tri::Yes;
  return unknown ? Tri::Unknown : Tri::No;
}

bool DirectionContext::decide(Tri t, const std::string& question) const {
  if (t == Tri::Yes) return true;
  if (t == Tri::No) return false;
  if (policy_ == RelationPolicy::Strict)
    throw IndeterminateRelation("indeterminate relation: cannot decide whether " + question +
                                " (axes related only by an arbitrary/positional code)");
  return false;
}

DirectionDescriptor DirectionContext::plane_through(const Line& a, const Line& b) const {
  DirectionDescriptor d{2, {a, b}, std::nullopt};
  for (int c = 0; c < g_->class_count(); ++c) {
    const Line n = Line::along(g_->representative(c));
    if (perpendicular(a, n) == Tri::Yes && perpendicular(b, n) == Tri::Yes) {
      d.normal = n;
      return d;
    }
  }
  const Line ca = canonical(a), cb = canonical(b);
  if (ca.kind == Line::Kind::Axis && cb.kind == Line::Kind::Axis)
    d.normal = Line::generic(ca.axis, {ca.axis, cb.axis}, "x(" + line_key(ca) + "," + line_key(cb) + ")");
  return d;
}

DirectionDescriptor subspace_sum(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                 const DirectionContext& ctx) {
  if (a.rank == 0) return b;
  if (b.rank == 0) return a;
  if (a.rank == 3 || b.rank == 3) return DirectionDescriptor::full();
  if (a.rank == 1 && b.rank == 1) {
    const auto& la = a.span.front();
    const auto& lb = b.span.front();
    if (ctx.decide(ctx.parallel(la, lb), line_key(la) + " || " + line_key(lb))) return a;
    return ctx.plane_through(la, lb);
  }
  if (a.rank == 1 || b.rank == 1) {
    const auto& plane = a.rank == 2 ? a : b;
    const auto& line = a.rank == 1 ? a.span.front() : b.span.front();
    if (ctx.decide(ctx.contains(plane, line), line_key(line) + " lies in the plane")) return plane;
    return DirectionDescriptor::full();
  }
  if (ctx.decide(ctx.planes_parallel(a, b), "the two planes are parallel")) return a;
  return DirectionDescriptor::full();
}

Intersection subspace_intersection(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                   const DirectionContext& ctx) {
  if (a.rank == 0) return {a, Provenance::First};
  if (b.rank == 0) return {b, Provenance::Second};
  if (b.rank == 3) return a.rank == 3 ? Intersection{b, Provenance::Second} : Intersection{a, Provenance::First};
  if (a.rank == 3) return {b, Provenance::Second};

  if (a.rank == 1 && b.rank == 1) {
    const auto& la = a.span.front();
    const auto& lb = b.span.front();
    if (ctx.decide(ctx.parallel(la, lb), line_key(la) + " || " + line_key(lb))) return {a, Provenance::First};
    return {DirectionDescriptor::none(), Provenance::Derived};
  }
  if (a.rank == 1) {
    if (ctx.decide(ctx.contains(b, a.span.front()), line_key(a.span.front()) + " lies in the plane"))
      return {a, Provenance::First};
    return {DirectionDescriptor::none(), Provenance::Derived};
  }
  if (b.rank == 1) {
    if (ctx.decide(ctx.contains(a, b.span.front()), line_key(b.span.front()) + " lies in the plane"))
      return {b, Provenance::Second};
    return {DirectionDescriptor::none(), Provenance::Derived};
  }

  if (ctx.decide(ctx.planes_parallel(a, b), "the two planes are parallel")) return {a, Provenance::First};

  // Two distinct planes meet in a line.
  for (const auto& s : a.span)
    if (ctx.contains(b, s) == Tri::Yes) return {DirectionDescriptor::line(s), Provenance::Derived};
  for (const auto& s : b.span)
    if (ctx.contains(a, s) == Tri::Yes) return {DirectionDescriptor::line(s), Provenance::Derived};

  const AxisRef attributed = a.span.empty() ? a.normal->axis : a.span.front().axis;
  std::string id = "m(";
  for (const auto* d : {&a, &b}) {
    if (d->normal) id += line_key(*d->normal);
    else
      for (const auto& s : d->span) id += line_key(s);
    id += d == &a ? "|" : ")";
  }
  if (a.normal && b.normal) {
    const Line na = ctx.canonical(*a.normal), nb = ctx.canonical(*b.normal);
    if (na.kind == Line::Kind::Axis && nb.kind == Line::Kind::Axis)
      return {DirectionDescriptor::line(ctx.canonical(Line::generic(attributed, {na.axis, nb.axis}, id))),
              Provenance::Derived};
  }
  return {DirectionDescriptor::line(Line::generic(attributed, {}, id)), Provenance::Derived};
}

std::string line_key(const Line& l) {
  if (l.kind == Line::Kind::Axis) return "J" + std::to_string(l.axis.leg) + std::to_string(l.axis.joint);
  return l.id;
}

std::string describe_line(const Line& l, const RelationGraph& g) {
  auto label = [&](AxisRef a) { return g.contains(a) ? axis_label(a, g.kind(a)) : axis_label(a); };
  if (l.kind == Line::Kind::Axis) return label(l.axis);
  if (l.normal_to.size() == 1) return "n(" + label(l.normal_to.front()) + ")";
  if (l.normal_to.size() >= 2) {
    std::string s = "x(";
    for (std::size_t i = 0; i < l.normal_to.size(); ++i) s += (i ? "," : "") + label(l.normal_to[i]);
    return s + ")";
  }
  return "g(" + label(l.axis) + ")";
}

namespace {

std::string join_lines(const std::vector<Line>& lines, const RelationGraph& g) {
  std::string s;
  for (std::size_t i = 0; i < lines.size(); ++i) s += (i ? ", " : "") + describe_line(lines[i], g);
  return s;
}

}  // namespace

std::string describe_translation(const DirectionDescriptor& d, const RelationGraph& g) {
  switch (d.rank) {
    case 0: return "none";
    case 1: return "along " + describe_line(d.span.front(), g);
    case 3: return "any direction";
    default: break;
  }
  if (d.normal && d.normal->kind == Line::Kind::Axis) return "plane normal to " + describe_line(*d.normal, g);
  return "plane of " + join_lines(d.span, g);
}

std::string describe_rotation(const DirectionDescriptor& d, const RelationGraph& g) {
  switch (d.rank) {
    case 0: return "none";
    case 3: return "any direction";
    default: break;
  }
  if (d.span.empty() && d.normal) return "about axes normal to " + describe_line(*d.normal, g);
  return "about " + join_lines(d.span, g);
}

}  // namespace pocmob
