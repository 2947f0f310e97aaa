"""Independent reference trajectories for the classic control unit tests."""
import math


def cartpole(state, actions):
    g, mc, mp, l, f, tau = 9.8, 1.0, 0.1, 0.5, 10.0, 0.02
    x, xd, th, thd = state
    for a in actions:
        force = f if a == 1 else -f
        c, s = math.cos(th), math.sin(th)
        temp = (force + mp * l * thd * thd * s) / (mc + mp)
        thacc = (g * s - c * temp) / (l * (4.0 / 3.0 - mp * c * c / (mc + mp)))
        xacc = temp - mp * l * thacc * c / (mc + mp)
        x, xd, th, thd = x + tau * xd, xd + tau * xacc, th + tau * thd, thd + tau * thacc
    return x, xd, th, thd


def pendulum(state, torques):
    th, thd = state
    for u in torques:
        thd = min(max(thd + (3 * 10.0 / 2 * math.sin(th) + 3.0 * u) * 0.05, -8.0), 8.0)
        th = th + thd * 0.05
    return th, thd


def acrobot_deriv(s, a):
    m1 = m2 = l1 = 1.0
    lc1 = lc2 = 0.5
    i1 = i2 = 1.0
    g = 9.8
    t1, t2, d1_, d2_ = s
    d1 = m1 * lc1**2 + m2 * (l1**2 + lc2**2 + 2 * l1 * lc2 * math.cos(t2)) + i1 + i2
    d2 = m2 * (lc2**2 + l1 * lc2 * math.cos(t2)) + i2
    phi2 = m2 * lc2 * g * math.cos(t1 + t2 - math.pi / 2)
    phi1 = (-m2 * l1 * lc2 * d2_**2 * math.sin(t2) - 2 * m2 * l1 * lc2 * d2_ * d1_ * math.sin(t2)
            + (m1 * lc1 + m2 * l1) * g * math.cos(t1 - math.pi / 2) + phi2)
    dd2 = (a + d2 / d1 * phi1 - m2 * l1 * lc2 * d1_**2 * math.sin(t2) - phi2) / (
        m2 * lc2**2 + i2 - d2**2 / d1)
    dd1 = -(d2 * dd2 + phi1) / d1
    return [d1_, d2_, dd1, dd2]


def acrobot(state, torques):
    dt = 0.2
    s = list(state)
    for a in torques:
        k1 = acrobot_deriv(s, a)
        k2 = acrobot_deriv([s[i] + dt / 2 * k1[i] for i in range(4)], a)
        k3 = acrobot_deriv([s[i] + dt / 2 * k2[i] for i in range(4)], a)
        k4 = acrobot_deriv([s[i] + dt * k3[i] for i in range(4)], a)
        y = [s[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]) for i in range(4)]
        wrap = lambda v: (v + math.pi) % (2 * math.pi) - math.pi
        y[0], y[1] = wrap(y[0]), wrap(y[1])
        y[2] = min(max(y[2], -4 * math.pi), 4 * math.pi)
        y[3] = min(max(y[3], -9 * math.pi), 9 * math.pi)
        s = y
    return s


def mountaincar(state, actions):
    p, v = state
    for a in actions:
        v = min(max(v + (a - 1) * 0.001 + math.cos(3 * p) * -0.0025, -0.07), 0.07)
        p = min(max(p + v, -1.2), 0.6)
        if p == -1.2 and v < 0:
            v = 0.0
    return p, v


if __name__ == "__main__":
    print("cartpole", cartpole((0.01, -0.02, 0.03, 0.04), [i % 2 for i in range(20)]))
    print("pendulum", pendulum((1.0, 0.5), [2.0 * math.sin(i) for i in range(10)]))
    print("acrobot", acrobot((0.05, -0.03, 0.02, 0.01), [-1.0, 0.0, 1.0] * 4))
    print("mountaincar", mountaincar((-0.5, 0.0), [2, 2, 0, 1, 2] * 6))
    print("tanh2", math.tanh(math.tanh(1.0)))
