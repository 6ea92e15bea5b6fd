#pragma once

#include <string>
#include <variant>
#include <vector>

#include "sepcheck/type_expr.hpp"

namespace sepcheck {

struct VariantCtor {
  std::string name;
  TypeExpr arg;
};

struct RecordField {
  std::string label;
  bool is_mutable = false;
  TypeExpr type;
};

struct BoxedVariant {
  std::vector<VariantCtor> ctors;
};
struct UnboxedVariant {
  VariantCtor ctor;
};
struct BoxedRecord {
  std::vector<RecordField> fields;
};
struct UnboxedRecord {
  RecordField field;
};
struct Synonym {
  TypeExpr type;
};

using DatatypeDecl = std::variant<BoxedVariant, UnboxedVariant, BoxedRecord, UnboxedRecord, Synonym>;

struct SourcePos {
  int line = 0;
  int col = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

// A datatype constructor definition with GADT syntax already desugared.
struct Declaration {
  std::string name;
  std::vector<std::string> params;
  DatatypeDecl body;
  SourcePos pos{};
};

using Block = std::vector<Declaration>;

inline bool is_boxed(const DatatypeDecl& d) {
  return std::holds_alternative<BoxedVariant>(d) || std::holds_alternative<BoxedRecord>(d);
}

// The single type whose representation an unboxed declaration or synonym
// shares, together with the path label used in diagnostics.
struct UnboxedBody {
  std::string label;
  TypeExpr type;
};

inline UnboxedBody unboxed_body(const DatatypeDecl& d) {
  if (auto v = std::get_if<UnboxedVariant>(&d)) return {v->ctor.name, v->ctor.arg};
  if (auto r = std::get_if<UnboxedRecord>(&d)) return {r->field.label, r->field.type};
  if (auto s = std::get_if<Synonym>(&d)) return {"body", s->type};
  throw std::logic_error("unboxed_body on a boxed declaration");
}

// Every (path label, type) pair appearing in a declaration body.
inline std::vector<UnboxedBody> body_types(const DatatypeDecl& d) {
  std::vector<UnboxedBody> out;
  std::visit(overloaded{
                 [&](const BoxedVariant& v) {
                   for (const auto& c : v.ctors) out.push_back({c.name, c.arg});
                 },
                 [&](const UnboxedVariant& v) { out.push_back({v.ctor.name, v.ctor.arg}); },
                 [&](const BoxedRecord& r) {
                   for (const auto& f : r.fields) out.push_back({f.label, f.type});
                 },
                 [&](const UnboxedRecord& r) { out.push_back({r.field.label, r.field.type}); },
                 [&](const Synonym& s) { out.push_back({"body", s.type}); },
             },
             d);
  return out;
}

inline const char* decl_kind(const DatatypeDecl& d) {
  return std::visit(overloaded{
                        [](const BoxedVariant&) { return "boxed variant"; },
                        [](const UnboxedVariant&) { return "unboxed variant"; },
                        [](const BoxedRecord&) { return "boxed record"; },
                        [](const UnboxedRecord&) { return "unboxed record"; },
                        [](const Synonym&) { return "synonym"; },
                    },
                    d);
}

}  // namespace sepcheck
