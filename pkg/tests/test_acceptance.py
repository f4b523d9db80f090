"""End-to-end checklist over the desk-scale field sizes.

Each test covers one acceptance criterion and prints exactly one
``C<n> ...: PASS`` / ``FAIL`` line (visible under ``pytest -s``); the
assertion carries the first few problems when something breaks.  All
comparisons are exact -- integers and Fractions, never floats.
"""

import numpy as np

import oracles
from cubica import classify, cubic, gf, incidence, io, pg3, tables

ALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13]
BIG_Q = [q for q in ALL_Q if q >= 5]


def _report(tag, failures):
    status = "PASS" if not failures else f"FAIL ({len(failures)} problems)"
    print(f"{tag}: {status}")
    assert not failures, f"{tag}: " + "; ".join(str(f) for f in failures[:8])


def test_c01_census():
    failures = []
    for q in BIG_Q:
        tax = classify.get_taxonomy(q)
        planes = {n: len(m) for n, m in tax.plane_members.items()}
        if planes != tables.plane_census(q):
            failures.append(f"q={q}: plane census {planes}")
        lines = {n: len(m) for n, m in tax.class_members.items()}
        if lines != tables.line_census(q):
            failures.append(f"q={q}: line census {lines}")
        if sum(lines.values()) != tables.n_lines(q):
            failures.append(f"q={q}: line total {sum(lines.values())}")
    _report("C1 census of plane orbits and line classes (q>=5)", failures)


def test_c02_rational_table():
    failures = []
    for q in BIG_Q:
        rep = incidence.verify_table1(q)
        want = 5 * len(tables.valid_line_classes(q))
        if len(rep.cells) != want:
            failures.append(f"q={q}: {len(rep.cells)} cells, wanted {want}")
        failures.extend(f"q={q}: {c.lam}/{c.pi} Pi {c.actual_pi} Lambda "
                        f"{c.actual_lambda}" for c in rep.cells if not c.passed)
    _report("C2 class-level Pi/Lambda table, exact rationals (q>=5)", failures)


def test_c03_orbit_table_and_splits():
    failures = []
    for q in BIG_Q:
        for lam, sizes in tables.orbit_splits(q).items():
            got = tuple(len(classify.get_taxonomy(q).orbit_members[(lam, j)])
                        for j in range(1, len(sizes) + 1))
            if got != sizes:
                failures.append(f"q={q}: {lam} split {got} != {sizes}")
        rep = incidence.verify_table2(q)
        failures.extend(f"q={q}: {c.lam}[{c.orbit}]/{c.pi}"
                        for c in rep.cells if not c.passed)
        failures.extend(f"q={q}: {c.name}" for c in rep.checks if not c.passed)
    zero = [c for c in incidence.verify_table2(7).cells
            if (c.lam, c.orbit, c.pi) == ("EGamma", 2, "3C")]
    if not (len(zero) == 1 and zero[0].expected_pi == 0
            and zero[0].actual_pi == 0):
        failures.append(f"q=7 EGamma[2]/3C zero cell: {zero}")
    _report("C3 per-orbit Pi/Lambda table with orbit splits (q>=5)", failures)


def test_c04_small_fields_under_matrix_subgroup():
    failures = []
    natural_xi = {2: -1, 3: 0, 4: 1}
    for q in (2, 3, 4):
        grp = classify.get_taxonomy(q).grp
        if grp.order != q ** 3 - q:
            failures.append(f"q={q}: group order {grp.order}")
        if tables.xi_of(q) != natural_xi[q]:
            failures.append(f"q={q}: xi {tables.xi_of(q)}")
        rep = incidence.verify_table1(q)
        failures.extend(f"q={q}: {c.lam}/{c.pi}" for c in rep.cells
                        if not c.passed)
    _report("C4 small fields q=2,3,4 match their natural xi column", failures)


def test_c05_summation_identities():
    failures = []
    external = {"RC", "T", "UGamma", "UnGamma"}
    for q in ALL_Q:
        rep = incidence.verify_relations(q)
        failures.extend(f"q={q}: {c.name}" for c in rep.checks if not c.passed)
        names = {c.name for c in rep.checks}
        for lam in tables.valid_line_classes(q):
            if lam in external:
                continue
            if f"per-line external identities [{lam}]" not in names:
                failures.append(f"q={q}: no per-line check for {lam}")
    _report("C5 summation and per-line counting identities", failures)


def test_c06_structure_checks():
    failures = []
    for q in ALL_Q:
        rep = incidence.check_structure(q)
        failures.extend(f"q={q}: {c.name}" for c in rep.checks if not c.passed)
        names = {c.name for c in rep.checks}
        want = ["orbit submatrices are 4-cycle-free configurations",
                "Lambda=1 orbit submatrices split into permutation blocks",
                "IC pencils consist of 1Cbar planes and partition them"]
        if tables.xi_of(q) != 0:
            want.append("I[Gamma,RA] is the complete 2-(q+1,2,1) design")
        if tables.xi_of(q) == 1:
            want.append("IA pencils consist of 1Cbar planes and partition them")
        failures.extend(f"q={q}: missing check {w!r}"
                        for w in want if w not in names)
    _report("C6 designs, identity stacks and pencil partitions", failures)


def test_c07_chord_geometry_and_polarity():
    failures = []
    for q in [2, 3, 4, 5, 7, 8, 9]:
        s = pg3.get_space(q)
        cub = cubic.get_cubic(q)
        chords = np.concatenate(
            [cub.real_chords, cub.tangent_ids, cub.imaginary_chord_set])
        if len(chords) != q * q + q + 1:
            failures.append(f"q={q}: {len(chords)} chords")
        counts = np.zeros(s.n_points, dtype=np.int64)
        for lid in chords:
            counts[s.line_points[lid]] += 1
        on = np.zeros(s.n_points, dtype=bool)
        on[cub.point_ids] = True
        if not (counts[on] == q + 1).all():
            failures.append(f"q={q}: cubic point without q+1 chords")
        if not (counts[~on] == 1).all():
            failures.append(f"q={q}: off-curve point not on exactly one chord")
        off_ids = np.nonzero(~on)[0]
        rows = s.line_points[cub.chord_of_point[off_ids]]
        if not (rows == off_ids[:, None]).any(axis=1).all():
            failures.append(f"q={q}: chord_of_point misses its point")
    for q in [q for q in ALL_Q if q % 3 != 0]:
        cub = cubic.get_cubic(q)
        pol = cub.polar_line_of_line
        if not (pol[pol] == np.arange(len(pol))).all():
            failures.append(f"q={q}: line polarity is not an involution")
        pts = np.arange(len(cub.polar_plane_of_point))
        if not (cub.polar_point_of_plane[cub.polar_plane_of_point] == pts).all():
            failures.append(f"q={q}: point/plane polarity not inverse")
        if not np.array_equal(np.sort(pol[cub.real_chords]), cub.real_axes):
            failures.append(f"q={q}: real chords do not map onto real axes")
        if not np.array_equal(np.sort(pol[cub.imaginary_chord_set]),
                              cub.imaginary_axes):
            failures.append(f"q={q}: imaginary chords/axes mismatch")
        if not (pol[cub.tangent_ids] == cub.tangent_ids).all():
            failures.append(f"q={q}: tangents not self-polar")
        if not (cub.polar_plane_of_point[cub.point_ids]
                == cub.osc_plane_ids).all():
            failures.append(f"q={q}: polarity breaks curve/developable swap")
    _report("C7 chord partition (q<=9) and polarity exchange (xi!=0)", failures)


def test_c08_classifier_matches_brute_force():
    failures = []
    for q in [2, 3, 4, 5, 7]:
        tax = classify.get_taxonomy(q)
        s = tax.space
        t_of_point = oracles.t_of_point_map(s)
        axis_pts = oracles.axis_point_ids(s) if q % 3 == 0 else None
        bad = 0
        for lid in range(s.n_lines):
            want = oracles.classify_line_oracle(s, t_of_point, lid, axis_pts)
            if classify.LINE_CLASSES[tax.line_code[lid]] != want:
                bad += 1
        if bad:
            failures.append(f"q={q}: {bad}/{s.n_lines} label mismatches")
    _report("C8 line classifier agrees with brute force on every line (q<=7)",
            failures)


def test_c09_character_value_counts():
    failures = []
    for q in [5, 7, 11, 13]:
        got = gf.character_value_counts(q)
        want = tables.character_counts(q)
        if got != want:
            failures.append(f"q={q}: {got} != {want}")
    _report("C9 quadratic-character value counts", failures)


def test_c10_export_fidelity(tmp_path):
    failures = []
    cases = [(5, "2C", "RC", None), (5, "1Cbar", "IC", None),
             (8, "Gamma", "UGamma", 2)]
    for q, pi, lam, j in cases:
        tag = f"q={q} ({pi},{lam},{j})"
        v = incidence.get_verifier(q)
        m = v.submatrix(pi, lam, j)
        st = v.stats_of(pi, lam, j)
        nnz = int(m.bits.sum())
        if nnz != st.lambda_count * m.bits.shape[1]:
            failures.append(f"{tag}: nnz {nnz} != Lambda*planes")
        mm_path = tmp_path / f"{q}_{pi}_{lam}.mtx"
        mm_path.write_text(io.matrix_market_text(m.bits))
        back = io.parse_matrix_market(mm_path.read_text())
        if not np.array_equal(back, m.bits):
            failures.append(f"{tag}: MatrixMarket round-trip")
        al_path = tmp_path / f"{q}_{pi}_{lam}.alist"
        al_path.write_text(io.alist_text(m.bits))
        back2 = io.parse_alist(al_path.read_text())
        if not np.array_equal(back2, m.bits):
            failures.append(f"{tag}: alist round-trip")
        cols = back.T
        for a in range(len(cols)):
            for b in range(a + 1, len(cols)):
                if int((cols[a] & cols[b]).sum()) > 1:
                    failures.append(f"{tag}: columns {a},{b} share 2+ rows")
    first = incidence.get_verifier(5).submatrix("2C", "RC")
    if first.bits.shape != (15, 30) or int(first.bits.sum()) != 30:
        failures.append(f"(2C,RC) at q=5: shape {first.bits.shape}")
    _report("C10 export round-trips, nnz counts, 4-cycle freedom", failures)
