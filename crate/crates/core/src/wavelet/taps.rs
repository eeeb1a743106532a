//! Literal filter-tap tables for the catalogued wavelet families.
//!
//! Taps follow the usual filter-bank convention: decomposition low/high-pass
//! followed by reconstruction low/high-pass, all zero-padded to one common
//! length per family member.

#![allow(clippy::excessive_precision, clippy::unreadable_literal)]

pub(crate) struct TapTable {
    pub name: &'static str,
    pub orthogonal: bool,
    pub dec_lo: &'static [f64],
    pub dec_hi: &'static [f64],
    pub rec_lo: &'static [f64],
    pub rec_hi: &'static [f64],
}

pub(crate) const TABLES: &[TapTable] = &[
    TapTable {
        name: "haar",
        orthogonal: true,
        dec_lo: &[
            0.7071067811865476,
            0.7071067811865476,
        ],
        dec_hi: &[
            -0.7071067811865476,
            0.7071067811865476,
        ],
        rec_lo: &[
            0.7071067811865476,
            0.7071067811865476,
        ],
        rec_hi: &[
            0.7071067811865476,
            -0.7071067811865476,
        ],
    },
    TapTable {
        name: "db2",
        orthogonal: true,
        dec_lo: &[
            -0.12940952255126037,
            0.2241438680420134,
            0.8365163037378079,
            0.48296291314453416,
        ],
        dec_hi: &[
            -0.48296291314453416,
            0.8365163037378079,
            -0.2241438680420134,
            -0.12940952255126037,
        ],
        rec_lo: &[
            0.48296291314453416,
            0.8365163037378079,
            0.2241438680420134,
            -0.12940952255126037,
        ],
        rec_hi: &[
            -0.12940952255126037,
            -0.2241438680420134,
            0.8365163037378079,
            -0.48296291314453416,
        ],
    },
    TapTable {
        name: "db3",
        orthogonal: true,
        dec_lo: &[
            0.03522629188570953,
            -0.08544127388202666,
            -0.13501102001025458,
            0.45987750211849154,
            0.8068915093110925,
            0.33267055295008263,
        ],
        dec_hi: &[
            -0.33267055295008263,
            0.8068915093110925,
            -0.45987750211849154,
            -0.13501102001025458,
            0.08544127388202666,
            0.03522629188570953,
        ],
        rec_lo: &[
            0.33267055295008263,
            0.8068915093110925,
            0.45987750211849154,
            -0.13501102001025458,
            -0.08544127388202666,
            0.03522629188570953,
        ],
        rec_hi: &[
            0.03522629188570953,
            0.08544127388202666,
            -0.13501102001025458,
            -0.45987750211849154,
            0.8068915093110925,
            -0.33267055295008263,
        ],
    },
    TapTable {
        name: "db4",
        orthogonal: true,
        dec_lo: &[
            -0.010597401785069032,
            0.0328830116668852,
            0.030841381835560764,
            -0.18703481171909309,
            -0.027983769416859854,
            0.6308807679298589,
            0.7148465705529157,
            0.2303778133088965,
        ],
        dec_hi: &[
            -0.2303778133088965,
            0.7148465705529157,
            -0.6308807679298589,
            -0.027983769416859854,
            0.18703481171909309,
            0.030841381835560764,
            -0.0328830116668852,
            -0.010597401785069032,
        ],
        rec_lo: &[
            0.2303778133088965,
            0.7148465705529157,
            0.6308807679298589,
            -0.027983769416859854,
            -0.18703481171909309,
            0.030841381835560764,
            0.0328830116668852,
            -0.010597401785069032,
        ],
        rec_hi: &[
            -0.010597401785069032,
            -0.0328830116668852,
            0.030841381835560764,
            0.18703481171909309,
            -0.027983769416859854,
            -0.6308807679298589,
            0.7148465705529157,
            -0.2303778133088965,
        ],
    },
    TapTable {
        name: "bior1.1",
        orthogonal: false,
        dec_lo: &[
            0.7071067811865476,
            0.7071067811865476,
        ],
        dec_hi: &[
            -0.7071067811865476,
            0.7071067811865476,
        ],
        rec_lo: &[
            0.7071067811865476,
            0.7071067811865476,
        ],
        rec_hi: &[
            0.7071067811865476,
            -0.7071067811865476,
        ],
    },
    TapTable {
        name: "bior1.3",
        orthogonal: false,
        dec_lo: &[
            -0.08838834764831845,
            0.08838834764831845,
            0.7071067811865476,
            0.7071067811865476,
            0.08838834764831845,
            -0.08838834764831845,
        ],
        dec_hi: &[
            -0.0,
            0.0,
            -0.7071067811865476,
            0.7071067811865476,
            -0.0,
            0.0,
        ],
        rec_lo: &[
            0.0,
            0.0,
            0.7071067811865476,
            0.7071067811865476,
            0.0,
            0.0,
        ],
        rec_hi: &[
            -0.08838834764831845,
            -0.08838834764831845,
            0.7071067811865476,
            -0.7071067811865476,
            0.08838834764831845,
            0.08838834764831845,
        ],
    },
    TapTable {
        name: "bior1.5",
        orthogonal: false,
        dec_lo: &[
            0.016572815184059706,
            -0.016572815184059706,
            -0.12153397801643785,
            0.12153397801643785,
            0.7071067811865476,
            0.7071067811865476,
            0.12153397801643785,
            -0.12153397801643785,
            -0.016572815184059706,
            0.016572815184059706,
        ],
        dec_hi: &[
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.7071067811865476,
            0.7071067811865476,
            -0.0,
            0.0,
            -0.0,
            0.0,
        ],
        rec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.7071067811865476,
            0.7071067811865476,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        rec_hi: &[
            0.016572815184059706,
            0.016572815184059706,
            -0.12153397801643785,
            -0.12153397801643785,
            0.7071067811865476,
            -0.7071067811865476,
            0.12153397801643785,
            0.12153397801643785,
            -0.016572815184059706,
            -0.016572815184059706,
        ],
    },
    TapTable {
        name: "bior2.2",
        orthogonal: false,
        dec_lo: &[
            0.0,
            -0.1767766952966369,
            0.3535533905932738,
            1.0606601717798212,
            0.3535533905932738,
            -0.1767766952966369,
        ],
        dec_hi: &[
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
        ],
        rec_lo: &[
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
        ],
        rec_hi: &[
            0.0,
            0.1767766952966369,
            0.3535533905932738,
            -1.0606601717798212,
            0.3535533905932738,
            0.1767766952966369,
        ],
    },
    TapTable {
        name: "bior2.4",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.03314563036811941,
            -0.06629126073623882,
            -0.1767766952966369,
            0.4198446513295126,
            0.9943689110435825,
            0.4198446513295126,
            -0.1767766952966369,
            -0.06629126073623882,
            0.03314563036811941,
        ],
        dec_hi: &[
            -0.0,
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
            -0.0,
            0.0,
        ],
        rec_lo: &[
            0.0,
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        rec_hi: &[
            0.0,
            -0.03314563036811941,
            -0.06629126073623882,
            0.1767766952966369,
            0.4198446513295126,
            -0.9943689110435825,
            0.4198446513295126,
            0.1767766952966369,
            -0.06629126073623882,
            -0.03314563036811941,
        ],
    },
    TapTable {
        name: "bior2.6",
        orthogonal: false,
        dec_lo: &[
            0.0,
            -0.006905339660024878,
            0.013810679320049757,
            0.04695630968816917,
            -0.1077232986963881,
            -0.16987135563661201,
            0.4474660099696121,
            0.966747552403483,
            0.4474660099696121,
            -0.16987135563661201,
            -0.1077232986963881,
            0.04695630968816917,
            0.013810679320049757,
            -0.006905339660024878,
        ],
        dec_hi: &[
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
        ],
        rec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        rec_hi: &[
            0.0,
            0.006905339660024878,
            0.013810679320049757,
            -0.04695630968816917,
            -0.1077232986963881,
            0.16987135563661201,
            0.4474660099696121,
            -0.966747552403483,
            0.4474660099696121,
            0.16987135563661201,
            -0.1077232986963881,
            -0.04695630968816917,
            0.013810679320049757,
            0.006905339660024878,
        ],
    },
    TapTable {
        name: "bior2.8",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0015105430506304422,
            -0.0030210861012608843,
            -0.012947511862546647,
            0.02891610982635418,
            0.05299848189069094,
            -0.13491307360773605,
            -0.16382918343409023,
            0.46257144047591653,
            0.9516421218971786,
            0.46257144047591653,
            -0.16382918343409023,
            -0.13491307360773605,
            0.05299848189069094,
            0.02891610982635418,
            -0.012947511862546647,
            -0.0030210861012608843,
            0.0015105430506304422,
        ],
        dec_hi: &[
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
        ],
        rec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        rec_hi: &[
            0.0,
            -0.0015105430506304422,
            -0.0030210861012608843,
            0.012947511862546647,
            0.02891610982635418,
            -0.05299848189069094,
            -0.13491307360773605,
            0.16382918343409023,
            0.46257144047591653,
            -0.9516421218971786,
            0.46257144047591653,
            0.16382918343409023,
            -0.13491307360773605,
            -0.05299848189069094,
            0.02891610982635418,
            0.012947511862546647,
            -0.0030210861012608843,
            -0.0015105430506304422,
        ],
    },
    TapTable {
        name: "bior3.1",
        orthogonal: false,
        dec_lo: &[
            -0.3535533905932738,
            1.0606601717798212,
            1.0606601717798212,
            -0.3535533905932738,
        ],
        dec_hi: &[
            -0.1767766952966369,
            0.5303300858899106,
            -0.5303300858899106,
            0.1767766952966369,
        ],
        rec_lo: &[
            0.1767766952966369,
            0.5303300858899106,
            0.5303300858899106,
            0.1767766952966369,
        ],
        rec_hi: &[
            -0.3535533905932738,
            -1.0606601717798212,
            1.0606601717798212,
            0.3535533905932738,
        ],
    },
    TapTable {
        name: "rbio1.1",
        orthogonal: false,
        dec_lo: &[
            0.7071067811865476,
            0.7071067811865476,
        ],
        dec_hi: &[
            -0.7071067811865476,
            0.7071067811865476,
        ],
        rec_lo: &[
            0.7071067811865476,
            0.7071067811865476,
        ],
        rec_hi: &[
            0.7071067811865476,
            -0.7071067811865476,
        ],
    },
    TapTable {
        name: "rbio1.3",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0,
            0.7071067811865476,
            0.7071067811865476,
            0.0,
            0.0,
        ],
        dec_hi: &[
            0.08838834764831845,
            0.08838834764831845,
            -0.7071067811865476,
            0.7071067811865476,
            -0.08838834764831845,
            -0.08838834764831845,
        ],
        rec_lo: &[
            -0.08838834764831845,
            0.08838834764831845,
            0.7071067811865476,
            0.7071067811865476,
            0.08838834764831845,
            -0.08838834764831845,
        ],
        rec_hi: &[
            0.0,
            -0.0,
            0.7071067811865476,
            -0.7071067811865476,
            0.0,
            -0.0,
        ],
    },
    TapTable {
        name: "rbio1.5",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.7071067811865476,
            0.7071067811865476,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        dec_hi: &[
            -0.016572815184059706,
            -0.016572815184059706,
            0.12153397801643785,
            0.12153397801643785,
            -0.7071067811865476,
            0.7071067811865476,
            -0.12153397801643785,
            -0.12153397801643785,
            0.016572815184059706,
            0.016572815184059706,
        ],
        rec_lo: &[
            0.016572815184059706,
            -0.016572815184059706,
            -0.12153397801643785,
            0.12153397801643785,
            0.7071067811865476,
            0.7071067811865476,
            0.12153397801643785,
            -0.12153397801643785,
            -0.016572815184059706,
            0.016572815184059706,
        ],
        rec_hi: &[
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.7071067811865476,
            -0.7071067811865476,
            0.0,
            -0.0,
            0.0,
            -0.0,
        ],
    },
    TapTable {
        name: "rbio2.2",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
        ],
        dec_hi: &[
            0.1767766952966369,
            0.3535533905932738,
            -1.0606601717798212,
            0.3535533905932738,
            0.1767766952966369,
            0.0,
        ],
        rec_lo: &[
            -0.1767766952966369,
            0.3535533905932738,
            1.0606601717798212,
            0.3535533905932738,
            -0.1767766952966369,
            0.0,
        ],
        rec_hi: &[
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
        ],
    },
    TapTable {
        name: "rbio2.4",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
            0.0,
        ],
        dec_hi: &[
            -0.03314563036811941,
            -0.06629126073623882,
            0.1767766952966369,
            0.4198446513295126,
            -0.9943689110435825,
            0.4198446513295126,
            0.1767766952966369,
            -0.06629126073623882,
            -0.03314563036811941,
            0.0,
        ],
        rec_lo: &[
            0.03314563036811941,
            -0.06629126073623882,
            -0.1767766952966369,
            0.4198446513295126,
            0.9943689110435825,
            0.4198446513295126,
            -0.1767766952966369,
            -0.06629126073623882,
            0.03314563036811941,
            0.0,
        ],
        rec_hi: &[
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
            -0.0,
        ],
    },
    TapTable {
        name: "rbio2.6",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        dec_hi: &[
            0.006905339660024878,
            0.013810679320049757,
            -0.04695630968816917,
            -0.1077232986963881,
            0.16987135563661201,
            0.4474660099696121,
            -0.966747552403483,
            0.4474660099696121,
            0.16987135563661201,
            -0.1077232986963881,
            -0.04695630968816917,
            0.013810679320049757,
            0.006905339660024878,
            0.0,
        ],
        rec_lo: &[
            -0.006905339660024878,
            0.013810679320049757,
            0.04695630968816917,
            -0.1077232986963881,
            -0.16987135563661201,
            0.4474660099696121,
            0.966747552403483,
            0.4474660099696121,
            -0.16987135563661201,
            -0.1077232986963881,
            0.04695630968816917,
            0.013810679320049757,
            -0.006905339660024878,
            0.0,
        ],
        rec_hi: &[
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
        ],
    },
    TapTable {
        name: "rbio2.8",
        orthogonal: false,
        dec_lo: &[
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.3535533905932738,
            0.7071067811865476,
            0.3535533905932738,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
        ],
        dec_hi: &[
            -0.0015105430506304422,
            -0.0030210861012608843,
            0.012947511862546647,
            0.02891610982635418,
            -0.05299848189069094,
            -0.13491307360773605,
            0.16382918343409023,
            0.46257144047591653,
            -0.9516421218971786,
            0.46257144047591653,
            0.16382918343409023,
            -0.13491307360773605,
            -0.05299848189069094,
            0.02891610982635418,
            0.012947511862546647,
            -0.0030210861012608843,
            -0.0015105430506304422,
            0.0,
        ],
        rec_lo: &[
            0.0015105430506304422,
            -0.0030210861012608843,
            -0.012947511862546647,
            0.02891610982635418,
            0.05299848189069094,
            -0.13491307360773605,
            -0.16382918343409023,
            0.46257144047591653,
            0.9516421218971786,
            0.46257144047591653,
            -0.16382918343409023,
            -0.13491307360773605,
            0.05299848189069094,
            0.02891610982635418,
            -0.012947511862546647,
            -0.0030210861012608843,
            0.0015105430506304422,
            0.0,
        ],
        rec_hi: &[
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.3535533905932738,
            -0.7071067811865476,
            0.3535533905932738,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
            0.0,
            -0.0,
        ],
    },
    TapTable {
        name: "rbio3.1",
        orthogonal: false,
        dec_lo: &[
            0.1767766952966369,
            0.5303300858899106,
            0.5303300858899106,
            0.1767766952966369,
        ],
        dec_hi: &[
            0.3535533905932738,
            1.0606601717798212,
            -1.0606601717798212,
            -0.3535533905932738,
        ],
        rec_lo: &[
            -0.3535533905932738,
            1.0606601717798212,
            1.0606601717798212,
            -0.3535533905932738,
        ],
        rec_hi: &[
            0.1767766952966369,
            -0.5303300858899106,
            0.5303300858899106,
            -0.1767766952966369,
        ],
    },
];
