#pragma once
// Generated by tests/oracles/oracles.py (mpmath, scipy). Do not edit.
namespace oracle {
inline constexpr double A_dr21_r0p5 = 0.13301058265630673;
inline constexpr double A_dr21_r3 = 181.67740751545942;
inline constexpr double logA_dr87_r2 = 15.855263945348304;
inline constexpr double drift_dr43_r1 = 8.2670126839752996;
inline constexpr double drift_dr87_r0p1 = 150.29983348397832;
inline constexpr double omega_4 = 19.739208802178717;
inline constexpr double G_dr20_r1 = 0.04631223483129815;
inline constexpr double G_dr21_r0p5 = 0.081418753010108978;
inline constexpr double G_dr21_r1 = 0.013544240377459349;
inline constexpr double G_dr21_r3 = 0.00013457325714218967;
inline constexpr double G_dr43_r2 = 3.7765379787046603e-6;
inline constexpr double G_dr87_r5 = 4.2215228905304503e-24;
inline constexpr double GB_dr21_R2_r0p5 = 0.080282823975792463;
inline constexpr double invA_dr21_1_3 = 0.26469621925565101;
inline constexpr double yukawa_3_1_r1 = 0.02927491576215958;
inline constexpr double yukawa_4_1_r0p5 = 0.083916287456287054;
inline constexpr double yukawa_5_2_r1p5 = 0.0014040970077569382;
inline constexpr double ko_t2 = 3.4641016151377546;
inline constexpr double ko_t3 = 2.0;
inline constexpr double I_euclid_power3 = 0.5;
inline constexpr double I_euclid_exp = 1.0;
inline constexpr double I_dr_power3 = 0.5;
inline constexpr double I_dr_exp = 1.0;
inline constexpr double dr21_linear_u1 = 1.1251209232587533;
inline constexpr double dr21_linear_u2 = 1.5064078698215022;
inline constexpr double dr21_linear_u3 = 2.1824069829149781;
inline constexpr double three_g_lhs = 0.0099471839432434585;
}  // namespace oracle
