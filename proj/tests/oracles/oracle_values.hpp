#pragma once
// Generated by tests/oracles/friedrichs_oracle.py (mpmath, 40 digits). Do not edit.
#include <complex>
#include <vector>

namespace oracle {
using cplx = std::complex<double>;

// Two-level set: lambda = 0.1, omega = (1, 1.06), rho = (1, 1.2).
inline const std::vector<cplx> two_level_distant_poles = {cplx{-1.2213952078882143415, -0.062908613020127585325}};
inline const std::vector<cplx> two_level_poles = {cplx{1.000738365353155352, -8.0400482814694658786e-3}, cplx{1.0585353502764565222, -5.0798864247927502779e-3}};
inline const std::vector<std::vector<cplx>> two_level_residue_1 = {{cplx{-1.0155227625552453974, -1.6049360289720380593e-3}, cplx{-0.014855776097038844914, -0.1118847463309249393}}, {cplx{-0.014855776097038844914, -0.1118847463309249393}, cplx{0.012104325418639315802, -3.2925861158343998165e-3}}};
inline const cplx two_level_norm_sq_inv_1 = cplx{2.5768475684663124976e-3, 4.7829466271600224694e-4};
inline const std::vector<std::vector<cplx>> two_level_residue_2 = {{cplx{0.011611614770185139748, -2.4720427177843351036e-3}, cplx{0.011572193070797567161, 0.10915200157775351101}}, {cplx{0.011572193070797567161, 0.10915200157775351101}, cplx{-1.014843651316962349, 1.5087664431264567683e-3}}};
inline const cplx two_level_norm_sq_inv_2 = cplx{1.598974388415384578e-3, -4.3055221058445768418e-4};
inline const std::vector<std::vector<cplx>> two_level_amplitude_t10 = {{cplx{-0.78124365107072259234, 0.50308680615069074421}, cplx{0.031142977758347629795, -0.04750473012973419232}}, {cplx{0.031142977758347629795, -0.04750473012973419232}, cplx{-0.37580496942265651773, 0.87635920447256430928}}};
inline const std::vector<std::vector<cplx>> two_level_amplitude_t100 = {{cplx{0.40226954928500416614, 0.19635958841149609406}, cplx{0.033696485981328957317, 4.5204107906697285051e-3}}, {cplx{0.033696485981328957317, 4.5204107906697285051e-3}, cplx{0.34513410159711750025, 0.49885156823550819797}}};

// Two-level pole sweep, lambda = 0.08, 0.04, 0.02.
inline const std::vector<cplx> sweep_poles_08 = {cplx{1.0002984416345720764, -5.0979029873156186783e-3}, cplx{1.059220405114221386, -3.2779135629254114771e-3}};
inline const std::vector<cplx> sweep_poles_04 = {cplx{1.0000183942407810658, -1.2607474106768850973e-3}, cplx{1.0598560046936358817, -8.2623468379734384486e-4}};
inline const std::vector<cplx> sweep_poles_02 = {cplx{1.000001146396191663, -3.1441117919438043406e-4}, cplx{1.0599671270527134422, -2.0689906053282287837e-4}};

// One-level set: lambda = 0.1, omega = 1, rho = 1.
inline const cplx one_level_pole = cplx{1.0000313302696437786, -7.8847575464844982908e-3};
inline const cplx one_level_residue = cplx{-1.0039099652374252592, -4.0202580122707037821e-3};

// Three-level set: lambda = 0.05, omega = (1, 1.06, 1.15), rho = (1, 1, 1).
inline const std::vector<cplx> three_level_poles = {cplx{1.0000922156881136291, -1.9634535960889776375e-3}, cplx{1.0600373785360731695, -1.9109149900329683001e-3}, cplx{1.1500701218913631879, -1.8308220080761975194e-3}};

}  // namespace oracle
