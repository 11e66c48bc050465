#pragma once

#include <string>
#include <vector>

#include "levinlab/problem.hpp"

// The witnessed problems and the standard Pi01 families behind them.
namespace levin::catalog {

Problem fin();          // (exists n)(forall m >= n) x(m) = 0
Problem conv();         // x(t) = x(s) for all t >= s
Problem bddseq();       // x(n) <= b for all n
Problem qpre();         // pre-real x = k/m, witness (m, k)
Problem potop();        // witness a is the greatest element
Problem disconn();      // subset presentation, witness (a, b) not connected
Problem disconn_fun();  // function presentation
Problem orbit();        // at least two orbits, witness (a, b)
Problem halftruth();    // witness (n, m) with x_n or x_m zero
Problem truth();        // witness n with x_n zero
Problem nondense();     // witness (a, b) with nothing strictly between
Problem poatom();       // witness an atom
Problem tr2();          // witness (s, t) incomparable extendible strings

// Bounded sequences of rationals and of pre-reals; witness (den, num) for
// the bound num/den.
Problem bddseq_q();
Problem bddseq_r();

const std::vector<Problem>& problems();   // the thirteen
const std::vector<Problem>& auxiliary();  // bddseq_q, bddseq_r
Problem find_problem(const std::string& id);

// F_n: x(m) = 0 for all m >= n (increasing).
Pi01Family fin_pieces();
// B_k: x(n) < k for all n (increasing).
Pi01Family bounded_by();
// G_a: a is the greatest element (disjoint).
Pi01Family potop_pieces();
// T_n: x_n = 0^inf.
Pi01Family truth_columns();
// E_k: x(n) = k for all n (disjoint, not increasing).
Pi01Family constant_pieces();

}  // namespace levin::catalog
