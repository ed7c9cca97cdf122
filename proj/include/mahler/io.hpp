#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "mahler/becker.hpp"
#include "mahler/corpus.hpp"
#include "mahler/equation.hpp"
#include "mahler/regular.hpp"
#include "mahler/series.hpp"

namespace mahler::io {

using Json = nlohmann::json;

/// Parses text as JSON; syntax errors become InvalidInput carrying the byte
/// offset.
Json parse(std::string_view text);
/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

Json to_json(const Rational& q);
Json to_json(const Poly& p);
Json to_json(const LaurentSeries& s);
Json to_json(const MahlerEquation& eq);
Json to_json(const LinearRepresentation& rep);
Json to_json(const BeckerNormalization& n);
Json to_json(const Certificate& c);
Json to_json(const Decomposition& d);
Json to_json(const CorpusItem& item);

Rational rational_from_json(const Json& j);
Poly poly_from_json(const Json& j);
LaurentSeries series_from_json(const Json& j);
MahlerEquation equation_from_json(const Json& j);
LinearRepresentation rep_from_json(const Json& j);
BeckerNormalization normalization_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);
CorpusItem corpus_item_from_json(const Json& j);

enum class Schema { equation, series, rep, normalization, certificate, corpus_item };

/// Guesses the schema of a document from its keys.
Schema detect_schema(const Json& j);
std::string to_string(Schema s);

/// Parses with the detected schema and serializes again.
std::string canonicalize(const Json& j);

}  // namespace mahler::io
