//! Embedded quadrature node/weight tables, 25 significant digits.
//!
//! Gauss-Legendre pairs (node, weight) on [-1, 1] for 1..=16 points, and the
//! (G7, K15) Gauss-Kronrod pair used by the adaptive integrator.

/// Gauss-Legendre (node, weight) pairs on [-1, 1]; index [n-1] holds the
/// n-point rule.
pub(crate) const GAUSS_LEGENDRE: [&[(f64, f64)]; 16] = [
    // 1-point
    &[
        (0.0, 2.000000000000000000000000),
    ],
    // 2-point
    &[
        (-0.5773502691896257645091488, 1.000000000000000000000000),
        (0.5773502691896257645091488, 1.000000000000000000000000),
    ],
    // 3-point
    &[
        (-0.7745966692414833770358531, 0.5555555555555555555555556),
        (0.0, 0.8888888888888888888888889),
        (0.7745966692414833770358531, 0.5555555555555555555555556),
    ],
    // 4-point
    &[
        (-0.8611363115940525752239465, 0.3478548451374538573730639),
        (-0.3399810435848562648026658, 0.6521451548625461426269361),
        (0.3399810435848562648026658, 0.6521451548625461426269361),
        (0.8611363115940525752239465, 0.3478548451374538573730639),
    ],
    // 5-point
    &[
        (-0.9061798459386639927976269, 0.2369268850561890875142640),
        (-0.5384693101056830910363144, 0.4786286704993664680412915),
        (0.0, 0.5688888888888888888888889),
        (0.5384693101056830910363144, 0.4786286704993664680412915),
        (0.9061798459386639927976269, 0.2369268850561890875142640),
    ],
    // 6-point
    &[
        (-0.9324695142031520278123016, 0.1713244923791703450402961),
        (-0.6612093864662645136613996, 0.3607615730481386075698335),
        (-0.2386191860831969086305017, 0.4679139345726910473898703),
        (0.2386191860831969086305017, 0.4679139345726910473898703),
        (0.6612093864662645136613996, 0.3607615730481386075698335),
        (0.9324695142031520278123016, 0.1713244923791703450402961),
    ],
    // 7-point
    &[
        (-0.9491079123427585245261897, 0.1294849661688696932706114),
        (-0.7415311855993944398638648, 0.2797053914892766679014678),
        (-0.4058451513773971669066064, 0.3818300505051189449503698),
        (0.0, 0.4179591836734693877551020),
        (0.4058451513773971669066064, 0.3818300505051189449503698),
        (0.7415311855993944398638648, 0.2797053914892766679014678),
        (0.9491079123427585245261897, 0.1294849661688696932706114),
    ],
    // 8-point
    &[
        (-0.9602898564975362316835609, 0.1012285362903762591525314),
        (-0.7966664774136267395915539, 0.2223810344533744705443560),
        (-0.5255324099163289858177390, 0.3137066458778872873379622),
        (-0.1834346424956498049394761, 0.3626837833783619829651504),
        (0.1834346424956498049394761, 0.3626837833783619829651504),
        (0.5255324099163289858177390, 0.3137066458778872873379622),
        (0.7966664774136267395915539, 0.2223810344533744705443560),
        (0.9602898564975362316835609, 0.1012285362903762591525314),
    ],
    // 9-point
    &[
        (-0.9681602395076260898355762, 0.08127438836157441197189216),
        (-0.8360311073266357942994298, 0.1806481606948574040584720),
        (-0.6133714327005903973087020, 0.2606106964029354623187429),
        (-0.3242534234038089290385380, 0.3123470770400028400686304),
        (0.0, 0.3302393550012597631645251),
        (0.3242534234038089290385380, 0.3123470770400028400686304),
        (0.6133714327005903973087020, 0.2606106964029354623187429),
        (0.8360311073266357942994298, 0.1806481606948574040584720),
        (0.9681602395076260898355762, 0.08127438836157441197189216),
    ],
    // 10-point
    &[
        (-0.9739065285171717200779640, 0.06667134430868813759356881),
        (-0.8650633666889845107320967, 0.1494513491505805931457763),
        (-0.6794095682990244062343274, 0.2190863625159820439955349),
        (-0.4333953941292471907992659, 0.2692667193099963550912269),
        (-0.1488743389816312108848260, 0.2955242247147528701738930),
        (0.1488743389816312108848260, 0.2955242247147528701738930),
        (0.4333953941292471907992659, 0.2692667193099963550912269),
        (0.6794095682990244062343274, 0.2190863625159820439955349),
        (0.8650633666889845107320967, 0.1494513491505805931457763),
        (0.9739065285171717200779640, 0.06667134430868813759356881),
    ],
    // 11-point
    &[
        (-0.9782286581460569928039380, 0.05566856711617366648275372),
        (-0.8870625997680952990751578, 0.1255803694649046246346943),
        (-0.7301520055740493240934163, 0.1862902109277342514260976),
        (-0.5190961292068118159257257, 0.2331937645919904799185237),
        (-0.2695431559523449723315320, 0.2628045445102466621806889),
        (0.0, 0.2729250867779006307144835),
        (0.2695431559523449723315320, 0.2628045445102466621806889),
        (0.5190961292068118159257257, 0.2331937645919904799185237),
        (0.7301520055740493240934163, 0.1862902109277342514260976),
        (0.8870625997680952990751578, 0.1255803694649046246346943),
        (0.9782286581460569928039380, 0.05566856711617366648275372),
    ],
    // 12-point
    &[
        (-0.9815606342467192506905491, 0.04717533638651182719461596),
        (-0.9041172563704748566784659, 0.1069393259953184309602547),
        (-0.7699026741943046870368938, 0.1600783285433462263346525),
        (-0.5873179542866174472967024, 0.2031674267230659217490645),
        (-0.3678314989981801937526915, 0.2334925365383548087608499),
        (-0.1252334085114689154724414, 0.2491470458134027850005624),
        (0.1252334085114689154724414, 0.2491470458134027850005624),
        (0.3678314989981801937526915, 0.2334925365383548087608499),
        (0.5873179542866174472967024, 0.2031674267230659217490645),
        (0.7699026741943046870368938, 0.1600783285433462263346525),
        (0.9041172563704748566784659, 0.1069393259953184309602547),
        (0.9815606342467192506905491, 0.04717533638651182719461596),
    ],
    // 13-point
    &[
        (-0.9841830547185881494728294, 0.04048400476531587952002159),
        (-0.9175983992229779652065478, 0.09212149983772844791442178),
        (-0.8015780907333099127942065, 0.1388735102197872384636018),
        (-0.6423493394403402206439846, 0.1781459807619457382800467),
        (-0.4484927510364468528779129, 0.2078160475368885023125232),
        (-0.2304583159551347940655281, 0.2262831802628972384120902),
        (0.0, 0.2325515532308739101945895),
        (0.2304583159551347940655281, 0.2262831802628972384120902),
        (0.4484927510364468528779129, 0.2078160475368885023125232),
        (0.6423493394403402206439846, 0.1781459807619457382800467),
        (0.8015780907333099127942065, 0.1388735102197872384636018),
        (0.9175983992229779652065478, 0.09212149983772844791442178),
        (0.9841830547185881494728294, 0.04048400476531587952002159),
    ],
    // 14-point
    &[
        (-0.9862838086968123388415973, 0.03511946033175186303183288),
        (-0.9284348836635735173363911, 0.08015808715976020980563328),
        (-0.8272013150697649931897947, 0.1215185706879031846894148),
        (-0.6872929048116854701480198, 0.1572031671581935345696019),
        (-0.5152486363581540919652907, 0.1855383974779378137417166),
        (-0.3191123689278897604356718, 0.2051984637212956039659241),
        (-0.1080549487073436620662447, 0.2152638534631577901958764),
        (0.1080549487073436620662447, 0.2152638534631577901958764),
        (0.3191123689278897604356718, 0.2051984637212956039659241),
        (0.5152486363581540919652907, 0.1855383974779378137417166),
        (0.6872929048116854701480198, 0.1572031671581935345696019),
        (0.8272013150697649931897947, 0.1215185706879031846894148),
        (0.9284348836635735173363911, 0.08015808715976020980563328),
        (0.9862838086968123388415973, 0.03511946033175186303183288),
    ],
    // 15-point
    &[
        (-0.9879925180204854284895657, 0.03075324199611726835462839),
        (-0.9372733924007059043077589, 0.07036604748810812470926742),
        (-0.8482065834104272162006483, 0.1071592204671719350118695),
        (-0.7244177313601700474161861, 0.1395706779261543144478048),
        (-0.5709721726085388475372267, 0.1662692058169939335532009),
        (-0.3941513470775633698972074, 0.1861610000155622110268006),
        (-0.2011940939974345223006283, 0.1984314853271115764561183),
        (0.0, 0.2025782419255612728806202),
        (0.2011940939974345223006283, 0.1984314853271115764561183),
        (0.3941513470775633698972074, 0.1861610000155622110268006),
        (0.5709721726085388475372267, 0.1662692058169939335532009),
        (0.7244177313601700474161861, 0.1395706779261543144478048),
        (0.8482065834104272162006483, 0.1071592204671719350118695),
        (0.9372733924007059043077589, 0.07036604748810812470926742),
        (0.9879925180204854284895657, 0.03075324199611726835462839),
    ],
    // 16-point
    &[
        (-0.9894009349916499325961542, 0.02715245941175409485178057),
        (-0.9445750230732325760779884, 0.06225352393864789286284384),
        (-0.8656312023878317438804679, 0.09515851168249278480992511),
        (-0.7554044083550030338951012, 0.1246289712555338720524763),
        (-0.6178762444026437484466718, 0.1495959888165767320815017),
        (-0.4580167776572273863424194, 0.1691565193950025381893121),
        (-0.2816035507792589132304605, 0.1826034150449235888667637),
        (-0.09501250983763744018531934, 0.1894506104550684962853967),
        (0.09501250983763744018531934, 0.1894506104550684962853967),
        (0.2816035507792589132304605, 0.1826034150449235888667637),
        (0.4580167776572273863424194, 0.1691565193950025381893121),
        (0.6178762444026437484466718, 0.1495959888165767320815017),
        (0.7554044083550030338951012, 0.1246289712555338720524763),
        (0.8656312023878317438804679, 0.09515851168249278480992511),
        (0.9445750230732325760779884, 0.06225352393864789286284384),
        (0.9894009349916499325961542, 0.02715245941175409485178057),
    ],
];

/// Positive Kronrod abscissae of the (G7, K15) pair, descending. Odd indices
/// are the embedded 7-point Gauss nodes.
pub(crate) const XGK15: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

/// Kronrod weights matching `XGK15`.
pub(crate) const WGK15: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Weights of the embedded 7-point Gauss rule (for nodes XGK15[1], XGK15[3],
/// XGK15[5], XGK15[7]).
pub(crate) const WG7: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];
