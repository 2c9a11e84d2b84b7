"""Published Monte Carlo reference values (10,000 replicates, 5% level).

``SIZE_POWER[case][(n1, n2, p)][a]`` maps to ``(T, T_lite, lc, clx)`` rejection
rates; ``KURTOSIS[table][(n1, n2)]`` lists ``(p, mean, variance)`` rows for the
fourth-cumulant estimator of sample 1.
"""

BLOCKS = (
    ((25, 35, 40), (50, 70, 80), (100, 140, 160), (200, 280, 320)),
    ((25, 35, 30), (50, 70, 60), (100, 140, 120), (200, 280, 240)),
    ((35, 25, 30), (70, 50, 60), (140, 100, 120), (280, 200, 240)),
    ((25, 35, 20), (50, 70, 40), (100, 140, 80), (200, 280, 160)),
)
A_VALUES = (0, 10, 20)
TESTS = ("T", "T_lite", "lc", "clx")


def _unpack(rows):
    # rows: per block, per test, 12 numbers (4 configs x a in 0, 10, 20)
    out = {}
    for block, per_test in zip(BLOCKS, rows):
        for ci, cfg in enumerate(block):
            out[cfg] = {a: tuple(per_test[t][3 * ci + ai] for t in range(4))
                        for ai, a in enumerate(A_VALUES)}
    return out


_CASE1 = (
    ((.055, .951, 1, .053, .951, 1, .054, .951, 1, .051, .946, 1),
     (.056, .999, 1, .048, 1, 1, .048, 1, 1, .049, 1, 1),
     (.074, .804, 1, .057, .489, .999, .054, .208, .954, .054, .093, .571),
     (.082, .152, .591, .057, .071, .343, .048, .049, .120, .042, .046, .062)),
    ((.059, .685, .999, .057, .618, .998, .054, .558, .994, .052, .523, .987),
     (.058, .997, 1, .053, .999, 1, .050, .999, 1, .049, 1, 1),
     (.063, .793, 1, .055, .494, .999, .053, .205, .952, .050, .098, .574),
     (.081, .154, .621, .054, .076, .380, .049, .048, .147, .045, .046, .068)),
    ((.060, .109, .075, .055, .167, .282, .050, .213, .515, .050, .248, .645),
     (.056, .956, 1, .052, .985, 1, .052, .989, 1, .046, .994, 1),
     (.068, .314, .992, .059, .143, .896, .054, .077, .489, .051, .054, .179),
     (.077, .203, .677, .054, .102, .433, .049, .061, .189, .042, .051, .076)),
    ((.060, .251, .960, .056, .119, .715, .050, .079, .330, .049, .053, .139),
     (.057, .996, 1, .052, .999, 1, .049, 1, 1, .050, .999, 1),
     (.069, .783, 1, .059, .476, .999, .051, .211, .948, .049, .095, .563),
     (.076, .169, .679, .058, .083, .438, .046, .053, .180, .047, .050, .072)),
)

_CASE2 = (
    ((.052, .961, 1, .046, .953, 1, .046, .950, 1, .048, .948, 1),
     (.054, 1, 1, .050, 1, 1, .049, 1, 1, .048, 1, 1),
     (.055, .815, 1, .056, .486, .999, .050, .209, .959, .050, .093, .579),
     (.191, .858, 1, .125, .567, 1, .086, .207, .996, .070, .095, .663)),
    ((.056, .701, .999, .050, .610, .998, .047, .563, .994, .053, .517, .986),
     (.057, .999, 1, .052, 1, 1, .051, 1, 1, .050, 1, 1),
     (.061, .818, 1, .053, .481, .999, .050, .205, .956, .050, .093, .573),
     (.163, .855, 1, .112, .581, 1, .087, .228, .997, .068, .095, .679)),
    ((.056, .108, .071, .052, .179, .272, .058, .225, .503, .055, .247, .654),
     (.058, .977, 1, .053, .993, 1, .053, .997, 1, .051, .998, 1),
     (.058, .307, .995, .050, .137, .904, .052, .072, .488, .049, .051, .177),
     (.169, .755, 1, .117, .409, .998, .087, .156, .858, .066, .081, .303)),
    ((.053, .245, .976, .055, .117, .724, .050, .072, .330, .051, .055, .134),
     (.061, .999, 1, .056, 1, 1, .050, 1, 1, .047, 1, 1),
     (.052, .813, 1, .057, .490, .999, .052, .204, .957, .051, .093, .568),
     (.146, .845, 1, .106, .583, 1, .078, .237, .996, .064, .098, .706)),
)

_CASE3 = (
    ((.051, .960, 1, .046, .954, 1, .046, .949, 1, .048, .949, 1),
     (.054, 1, 1, .050, 1, 1, .049, 1, 1, .048, 1, 1),
     (.020, .618, .982, .017, .409, .934, .016, .219, .746, .016, .106, .455),
     (.191, .861, 1, .125, .568, 1, .086, .210, .996, .070, .095, .662)),
    ((.056, .702, .999, .051, .610, .998, .046, .564, .994, .052, .517, .986),
     (.058, .999, 1, .053, 1, 1, .052, 1, 1, .049, 1, 1),
     (.019, .613, .983, .011, .407, .934, .016, .216, .755, .015, .103, .458),
     (.162, .856, 1, .112, .579, 1, .087, .229, .997, .068, .094, .679)),
    ((.057, .106, .071, .052, .179, .274, .057, .223, .502, .054, .249, .648),
     (.060, .978, 1, .053, .992, 1, .053, .997, 1, .052, .998, 1),
     (.019, .313, .869, .016, .185, .667, .018, .098, .408, .017, .056, .220),
     (.168, .757, 1, .117, .407, .999, .088, .157, .855, .067, .081, .305)),
    ((.053, .250, .975, .054, .119, .725, .050, .071, .327, .052, .054, .136),
     (.060, .999, 1, .056, 1, 1, .050, 1, 1, .048, 1, 1),
     (.019, .629, .983, .016, .403, .930, .015, .212, .752, .015, .113, .445),
     (.147, .847, 1, .106, .581, 1, .079, .237, .996, .063, .098, .706)),
)

_CASE4 = (
    ((.052, .961, 1, .046, .954, 1, .045, .950, 1, .047, .949, 1),
     (.052, 1, 1, .049, 1, 1, .049, 1, 1, .048, 1, 1),
     (.083, .505, .909, .081, .348, .793, .087, .240, .587, .082, .179, .386),
     (.062, .207, .778, .044, .076, .492, .030, .032, .187, .022, .020, .068)),
    ((.055, .701, .999, .050, .611, .998, .046, .565, .994, .053, .518, .987),
     (.057, .999, 1, .053, 1, 1, .052, 1, 1, .049, 1, 1),
     (.089, .517, .918, .083, .359, .786, .083, .235, .596, .081, .172, .395),
     (.068, .230, .818, .043, .085, .539, .031, .036, .221, .021, .023, .078)),
    ((.057, .107, .069, .051, .178, .276, .057, .224, .506, .054, .248, .649),
     (.060, .979, 1, .054, .993, 1, .053, .997, 1, .051, .998, 1),
     (.084, .310, .736, .083, .229, .563, .081, .170, .375, .084, .125, .247),
     (.065, .272, .777, .042, .145, .487, .029, .084, .244, .021, .048, .112)),
    ((.052, .245, .975, .055, .119, .724, .050, .072, .329, .051, .055, .135),
     (.061, .999, 1, .056, 1, 1, .050, 1, 1, .048, 1, 1),
     (.084, .518, .924, .079, .362, .792, .083, .249, .595, .081, .172, .398),
     (.072, .273, .862, .043, .107, .608, .032, .044, .261, .021, .025, .092)),
)

SIZE_POWER = {1: _unpack(_CASE1), 2: _unpack(_CASE2), 3: _unpack(_CASE3), 4: _unpack(_CASE4)}

KURTOSIS = {
    "del1": {
        (200, 280): ((2, .0186, .1368), (10, .0197, .0642), (20, .0193, .0563), (100, .0310, .0732),
                     (180, .0552, .1189), (220, .0719, .1634), (240, .0739, .1887), (300, .1491, .3568)),
        (400, 560): ((4, .0099, .0441), (20, .0081, .0260), (40, .0107, .0252), (200, .0121, .0338),
                     (360, .0223, .0555), (440, .0332, .0736), (480, .0395, .0870), (600, .0695, .1598)),
        (800, 1120): ((8, .0049, .0160), (40, .0034, .0116), (80, .0040, .0116), (400, .0057, .0166),
                      (720, .0135, .0261), (880, .0137, .0355), (960, .0190, .0424), (1200, .0373, .0771)),
    },
    "del2": {
        (200, 280): ((2, -1.2021, .0058), (10, -1.2009, .0073), (20, -1.2005, .0081), (100, -1.1971, .0179),
                     (180, -1.1858, .0450), (220, -1.1704, .0721), (240, -1.1650, .0902), (300, -1.1170, .2170)),
        (400, 560): ((4, -1.2020, .0032), (20, -1.2002, .0036), (40, -1.2001, .0039), (200, -1.1977, .0091),
                     (360, -1.1892, .0213), (440, -1.1894, .0314), (480, -1.1829, .0417), (600, -1.1537, .0974)),
        (800, 1120): ((8, -1.2012, .0015), (40, -1.2018, .0019), (80, -1.1994, .0020), (400, -1.2001, .0044),
                      (720, -1.1957, .0105), (880, -1.1938, .0159), (960, -1.1892, .0204), (1200, -1.1760, .0445)),
    },
}
