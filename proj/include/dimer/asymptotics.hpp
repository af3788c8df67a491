#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dimer/inverse.hpp"

namespace dimer {

enum class CorCase { Cor1 = 1, Cor2, Cor3, Cor4, Cor5, Cor6, Cor7 };

CorCase parse_cor_case(const std::string& s);
std::string cor_name(CorCase c);

// the fixed data of one regime; the asymptotic variable is passed separately:
//   Cor1: m      (n, n0 fixed)
//   Cor2..Cor5: n (n0, m fixed)
//   Cor6, Cor7: N (p, m fixed; n0 = +-N, n = +-pN)
struct AsymptoticCase {
    CorCase id = CorCase::Cor1;
    Spin i = Spin::Up, j = Spin::Up;
    int n0 = 1, n = 2, m = 0;
    double p = 2.0;
    WeightParams params{1.0, 4.0};

    // throws PreconditionError when (case, var) is outside the regime
    void check(long var) const;
    // (n0, n, m) of the entry at asymptotic variable var
    void entry_indices(long var, int& n0_out, int& n_out, int& m_out) const;
};

double leading_term(const AsymptoticCase& c, long var);

// quadrature value of the entry the case describes
double quadrature_value(const AsymptoticCase& c, long var, const QuadratureSpec& q);

// the c'_{1,2} part of the Cor7 integrand, integrated on its own
double cor7_split_integral(const AsymptoticCase& c, long N, const QuadratureSpec& q);

struct ProbeRow {
    long var;
    double asymptotic, quadrature, ratio;
};

struct ProbeTable {
    std::vector<ProbeRow> rows;
    double error_exponent = 0.0;  // slope of log|ratio - 1| against log var
};

ProbeTable ratio_probe(const AsymptoticCase& c, const std::vector<long>& schedule, const QuadratureSpec& q);
void write_probe_csv(std::ostream& os, const ProbeTable& t);

}  // namespace dimer
