#ifndef UNIFACT_JSON_IO_HPP
#define UNIFACT_JSON_IO_HPP

#include <string>
#include <vector>

#include "unifact/chart.hpp"
#include "unifact/factorize.hpp"
#include "unifact/param.hpp"
#include "unifact/poly.hpp"
#include "unifact/spray.hpp"
#include "unifact/tracker.hpp"

// JSON interchange for every CLI-facing schema. Emitters produce canonical
// documents (complex numbers always in {"re","im"} object form, rationals as
// decimal-free "p/q" strings); parsers also accept [re, im] pairs and bare
// numbers for complex values.
namespace unifact::io {

std::string poly_to_json(const Poly& p);
Poly poly_from_json(const std::string& text);

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string chain_to_json(const FactorChain& chain);
FactorChain chain_from_json(const std::string& text);

// Side-tagged unipotent words (factor_constant / factor-path output).
std::string factors_to_json(int n, const std::vector<ElementaryFactor>& factors);
std::vector<ElementaryFactor> factors_from_json(const std::string& text, int* n_out = nullptr);

std::string poly_factors_to_json(const std::vector<PolyElementaryFactor>& factors);
std::vector<PolyElementaryFactor> poly_factors_from_json(const std::string& text);

std::string poly_matrix2_to_json(const PolyMatrix2& m);
PolyMatrix2 poly_matrix2_from_json(const std::string& text);

std::string cvec_to_json(const std::vector<Cplx>& v);
std::vector<Cplx> cvec_from_json(const std::string& text);

std::string assignment_to_json(const PointAssignment& point);
PointAssignment assignment_from_json(const std::string& text);

std::string chart_to_json(const FiberChart& chart);

std::string track_to_json(const std::vector<TrackPoint>& points);
std::vector<PathSample> path_samples_from_json(const std::string& text);
std::vector<MatrixSample> matrix_samples_from_json(const std::string& text);
std::string chain_samples_to_json(const std::vector<ChainSample>& samples);

// Compact variable spelling for CLI flags: "z[row,col,factor]" or a free
// symbol name.
VarId varid_from_text(const std::string& text);

} // namespace unifact::io

#endif
