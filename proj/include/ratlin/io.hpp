#pragma once

#include "ratlin/pencils.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ratlin::io {

/// Term syntax: coefficients are integers or p/q fractions, the variable is
/// the letter l, powers use ^. A '/' directly between two digits is a
/// coefficient fraction; any other '/' splits numerator and denominator of a
/// rational function.
Poly parse_poly(const std::string& text);
RatFun parse_ratfun(const std::string& text);

PolyMatrix parse_polymatrix(std::istream& in);
RatMatrix parse_ratmatrix(std::istream& in);
SystemMatrix parse_psm(std::istream& in);

void write_polymatrix(std::ostream& out, const PolyMatrix& m);
void write_ratmatrix(std::ostream& out, const RatMatrix& m);
void write_psm(std::ostream& out, const SystemMatrix& psm);

std::string to_text(const PolyMatrix& m);
std::string to_text(const RatMatrix& m);
std::string to_text(const SystemMatrix& psm);

PolyMatrix parse_polymatrix_text(const std::string& text);
RatMatrix parse_ratmatrix_text(const std::string& text);
SystemMatrix parse_psm_text(const std::string& text);

/// all | only:{a,b,...} | except:{a,b,...}
Region parse_region(const std::string& text);

/// Keyed parameter files: "name: v1 v2 ..." for lists, "name:" followed by
/// rows of whitespace-separated rationals for matrices. '#' starts a comment.
struct ParamFile {
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, ConstMatrix> matrices;
};

ParamFile parse_param_file(std::istream& in);

SaadParams parse_saad_params(const ParamFile& pf);
SuBaiParams parse_subai_params(const ParamFile& pf);
NleigsBasic parse_nleigs_params(const ParamFile& pf);
NleigsLowRank parse_nleigs_lowrank_params(const ParamFile& pf);

}  // namespace ratlin::io
