#ifndef WEYLBEC_CONVENTIONS_HPP
#define WEYLBEC_CONVENTIONS_HPP

// Orientation and sign conventions, fixed once and used consistently by the
// chern, edge, fermiarc and correspondence modules. The set below is pinned
// by requiring that the three built-in example models and the qwz family
// reproduce their known integer invariants; changing any single choice in
// isolation breaks those cross-checks.
//
// 1. T^2 carries the (kx, ky) orientation: a frame (u, v) is positive when
//    cross(u, v) = u_x v_y - u_y v_x > 0.
//
// 2. Closed surfaces are parametrized (base, fiber) with the fiber along
//    kz: slices as (ky, kz) or (kx, kz), tubes as (s, kz) with s the
//    anticlockwise circle parameter, spheres as (polar, azimuth) which is
//    outward-oriented. The lattice field strength over this parametrization
//    with link ordering U_base * U_fiber gives c1(qwz n, 0<u<2) = +n.
//
// 3. Boundary circles of discs are anticlockwise: s -> c + r (cos s, sin s).
//
// 4. Spectral flow counts negative-to-positive eigenvalue crossings as +1.
//    With the closed-form edge dispersion E = b on |a| < 1 this is the sum
//    of sign(d(b o gamma)/ds) over arc crossings of the loop.
//
// 5. An intersection of an oriented arc f with an oriented loop gamma
//    counts +1 when (f', gamma') is a positive frame in the sense of (1).
//
// 6. Coefficients in the basis {[a_x], [a_y], [a_i]} of H_1(T^2, pi(W)):
//      edge :  q_x = -sf({kx0} x S^1)   q_y = +sf(S^1 x {ky0})
//              q_i = +sf(boundary circle at wbar_i)
//      bulk :  q_x = +c1(slice kx0)     q_y = -c1(slice ky0)
//              q_i = -c1(tube at wbar_i)
//      fermi:  each component f enters with weight -epsilon(f) and
//              coefficients (I(f, loop_y), -I(f, loop_x), -I(f, circle_i)).
//
// 7. epsilon(f) = sign of (-db/dkx f_y' + db/dky f_x'); reversing the
//    traversal of a component flips epsilon and every I(f, .) together, so
//    the fermi coefficients are orientation-independent.

#endif
