//! Cooperative-jamming allocation over bit-levels.
//!
//! Both users split their top levels into blocks of `3 n_delta` levels, each
//! made of three `n_delta`-level segments. User 1 sends
//! `[message, jam, unused]`, user 2 sends `[jam, message, unused]`, both in
//! their own level coordinates. The eavesdropper hears the two users at the
//! same strength, so every message segment lands on the other user's jam
//! segment. The legitimate receiver hears user 2 `n_delta` levels lower, so
//! the two jam segments pile up on one segment of `Y1` and each message
//! segment sits on an unused segment of the other user.
//!
//! User 1 runs the pattern over the `n_c` levels of the common part and user 2
//! over the `n_e` levels the eavesdropper hears. Below the common part the
//! private levels of `Y1` go to user 1 and user 2's overlapping levels are
//! held at zero. Pattern levels outside a user's physical range are clipped;
//! a repair pass then drops any message the eavesdropper would see without a
//! jam partner and any jam that covers no message.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelConfig;
use crate::error::{Error, Result};
use crate::level::LevelVector;
use crate::rates::achievable_rate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LevelRole {
    Message1,
    Message2,
    Jam1,
    Jam2,
    Unused,
    Zero,
}

impl LevelRole {
    pub fn is_message(self) -> bool {
        matches!(self, LevelRole::Message1 | LevelRole::Message2)
    }

    pub fn is_jam(self) -> bool {
        matches!(self, LevelRole::Jam1 | LevelRole::Jam2)
    }

    /// Unused and Zero levels always transmit 0.
    pub fn is_silent(self) -> bool {
        matches!(self, LevelRole::Unused | LevelRole::Zero)
    }
}

impl fmt::Display for LevelRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum User {
    One,
    Two,
}

impl User {
    fn other(self) -> Self {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    fn message(self) -> LevelRole {
        match self {
            User::One => LevelRole::Message1,
            User::Two => LevelRole::Message2,
        }
    }

    fn jam(self) -> LevelRole {
        match self {
            User::One => LevelRole::Jam1,
            User::Two => LevelRole::Jam2,
        }
    }
}

/// Role of every transmit level of both users, plus the derived counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllocationPlan {
    pub cfg: ChannelConfig,
    /// User 1's `n1` levels, top first.
    pub roles1: Vec<LevelRole>,
    /// User 2's `n2` levels, top first.
    pub roles2: Vec<LevelRole>,
    pub m1: usize,
    pub m2: usize,
    pub j1: usize,
    pub j2: usize,
}

/// A structural defect found by [`AllocationPlan::defects`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    /// A message level of `Y1` also receives a non-silent level of the other user.
    Y1Collision { y1_level: usize },
    /// The eavesdropper hears a message bit with no jam bit of the other user on top.
    Uncovered { user: User, level: usize },
    /// A jam level covers no message bit at the eavesdropper.
    IdleJam { user: User, level: usize },
}

fn pattern_role(user: User, level: u32, n_delta: u32) -> LevelRole {
    match ((level - 1) / n_delta) % 3 {
        0 => match user {
            User::One => LevelRole::Message1,
            User::Two => LevelRole::Jam2,
        },
        1 => match user {
            User::One => LevelRole::Jam1,
            User::Two => LevelRole::Message2,
        },
        _ => LevelRole::Unused,
    }
}

/// Builds the alignment plan for a normalized, non-singular configuration.
pub fn build_allocation(cfg: &ChannelConfig) -> Result<AllocationPlan> {
    if cfg.is_singular() {
        return Err(Error::Singular);
    }
    let nd = cfg.n_delta;
    let roles1 = (1..=cfg.n1)
        .map(|l| {
            if l <= cfg.n_c {
                pattern_role(User::One, l, nd)
            } else {
                LevelRole::Message1
            }
        })
        .collect();
    let roles2 = (1..=cfg.n2)
        .map(|l| {
            if l <= cfg.n_e {
                pattern_role(User::Two, l, nd)
            } else {
                LevelRole::Zero
            }
        })
        .collect();
    let mut plan = AllocationPlan::from_roles(*cfg, roles1, roles2)?;
    plan.repair();
    Ok(plan)
}

impl AllocationPlan {
    /// Wraps explicit role vectors; no consistency checks beyond lengths.
    pub fn from_roles(
        cfg: ChannelConfig,
        roles1: Vec<LevelRole>,
        roles2: Vec<LevelRole>,
    ) -> Result<Self> {
        for (roles, n) in [(&roles1, cfg.n1), (&roles2, cfg.n2)] {
            if roles.len() != n as usize {
                return Err(Error::LengthMismatch {
                    expected: n as usize,
                    actual: roles.len(),
                });
            }
        }
        let mut plan = Self {
            cfg,
            roles1,
            roles2,
            m1: 0,
            m2: 0,
            j1: 0,
            j2: 0,
        };
        plan.recount();
        Ok(plan)
    }

    /// Copy of the plan with one level reassigned. Counts are refreshed,
    /// nothing is repaired, so the result may be insecure or undecodable.
    pub fn with_role(&self, user: User, level: usize, role: LevelRole) -> Self {
        let mut plan = self.clone();
        plan.roles_mut(user)[level - 1] = role;
        plan.recount();
        plan
    }

    fn recount(&mut self) {
        let count = |roles: &[LevelRole], r: LevelRole| roles.iter().filter(|&&x| x == r).count();
        self.m1 = count(&self.roles1, LevelRole::Message1);
        self.m2 = count(&self.roles2, LevelRole::Message2);
        self.j1 = count(&self.roles1, LevelRole::Jam1);
        self.j2 = count(&self.roles2, LevelRole::Jam2);
    }

    pub fn roles(&self, user: User) -> &[LevelRole] {
        match user {
            User::One => &self.roles1,
            User::Two => &self.roles2,
        }
    }

    fn roles_mut(&mut self, user: User) -> &mut Vec<LevelRole> {
        match user {
            User::One => &mut self.roles1,
            User::Two => &mut self.roles2,
        }
    }

    fn role(&self, user: User, level: i64) -> Option<LevelRole> {
        if level < 1 {
            return None;
        }
        self.roles(user).get(level as usize - 1).copied()
    }

    fn gain(&self, user: User) -> u32 {
        match user {
            User::One => self.cfg.n1,
            User::Two => self.cfg.n2,
        }
    }

    /// Level of `Y1` (1-based, length `q`) where `user`'s local `level` lands.
    pub fn y1_level(&self, user: User, level: usize) -> usize {
        (self.cfg.q - self.gain(user)) as usize + level
    }

    /// Level of `Y2` where `user`'s local `level` lands, if the eavesdropper
    /// hears it at all.
    pub fn y2_level(&self, user: User, level: usize) -> Option<usize> {
        let heard = level <= self.cfg.n_e as usize && level <= self.gain(user) as usize;
        heard.then(|| (self.cfg.q - self.cfg.n_e) as usize + level)
    }

    /// The other user's level sharing a `Y1` level with `user`'s `level`.
    fn y1_partner(&self, user: User, level: usize) -> Option<LevelRole> {
        let shift = i64::from(self.cfg.n_delta);
        match user {
            User::One => self.role(User::Two, level as i64 - shift),
            User::Two => self.role(User::One, level as i64 + shift),
        }
    }

    /// The other user's level sharing a `Y2` level with `user`'s `level`.
    fn y2_partner(&self, user: User, level: usize) -> Option<LevelRole> {
        if level > self.cfg.n_e as usize {
            return None;
        }
        self.role(user.other(), level as i64)
    }

    /// Every structural defect of the plan. An empty list means each message
    /// bit is alone on its `Y1` level, every message bit the eavesdropper hears
    /// is masked by a jam bit, and every jam bit masks something.
    pub fn defects(&self) -> Vec<Defect> {
        let mut out = Vec::new();
        for user in [User::One, User::Two] {
            for (i, &role) in self.roles(user).iter().enumerate() {
                let level = i + 1;
                if role.is_message() {
                    if self.y1_partner(user, level).is_some_and(|p| !p.is_silent()) {
                        out.push(Defect::Y1Collision {
                            y1_level: self.y1_level(user, level),
                        });
                    }
                    if level <= self.cfg.n_e as usize
                        && self.y2_partner(user, level) != Some(user.other().jam())
                    {
                        out.push(Defect::Uncovered { user, level });
                    }
                } else if role.is_jam()
                    && self.y2_partner(user, level) != Some(user.other().message())
                {
                    out.push(Defect::IdleJam { user, level });
                }
            }
        }
        out
    }

    fn repair(&mut self) {
        loop {
            let defects = self.defects();
            if defects.is_empty() {
                break;
            }
            for d in defects {
                match d {
                    Defect::Uncovered { user, level } | Defect::IdleJam { user, level } => {
                        self.roles_mut(user)[level - 1] = LevelRole::Unused;
                    }
                    Defect::Y1Collision { y1_level } => {
                        // drop user 2's side of the collision
                        let level = y1_level - (self.cfg.q - self.cfg.n2) as usize;
                        self.roles_mut(User::Two)[level - 1] = LevelRole::Unused;
                    }
                }
            }
        }
        self.recount();
    }

    pub fn message_bits(&self) -> usize {
        self.m1 + self.m2
    }

    pub fn jam_bits(&self) -> usize {
        self.j1 + self.j2
    }

    /// Rate predicted by the closed form for this configuration.
    pub fn formula_rate(&self) -> u64 {
        achievable_rate(&self.cfg)
    }

    /// Whether the plan carries exactly the closed-form rate.
    pub fn formula_match(&self) -> bool {
        self.message_bits() as u64 == self.formula_rate()
    }

    /// Places message and jam bits on their levels. Message bits fill their
    /// levels top to bottom; `jam` holds user 1's jam bits first.
    pub fn encode(&self, w1: &[bool], w2: &[bool], jam: &[bool]) -> Result<(LevelVector, LevelVector)> {
        for (bits, n) in [(w1, self.m1), (w2, self.m2), (jam, self.jam_bits())] {
            if bits.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: bits.len(),
                });
            }
        }
        let (jam1, jam2) = jam.split_at(self.j1);
        let fill = |roles: &[LevelRole], msg: &[bool], jam: &[bool]| {
            let mut msg = msg.iter();
            let mut jam = jam.iter();
            LevelVector::from_bools(roles.iter().map(|r| match r {
                LevelRole::Message1 | LevelRole::Message2 => *msg.next().unwrap(),
                LevelRole::Jam1 | LevelRole::Jam2 => *jam.next().unwrap(),
                LevelRole::Unused | LevelRole::Zero => false,
            }))
        };
        Ok((fill(&self.roles1, w1, jam1), fill(&self.roles2, w2, jam2)))
    }

    /// Like [`encode`](Self::encode) with jam bits drawn uniformly from a
    /// seeded generator.
    pub fn encode_seeded(&self, w1: &[bool], w2: &[bool], seed: u64) -> Result<(LevelVector, LevelVector)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let jam: Vec<bool> = (0..self.jam_bits()).map(|_| rng.random()).collect();
        self.encode(w1, w2, &jam)
    }

    /// Reads every message bit off its level of `Y1`.
    pub fn decode(&self, y1: &LevelVector) -> Result<(Vec<bool>, Vec<bool>)> {
        if y1.len() != self.cfg.q as usize {
            return Err(Error::LengthMismatch {
                expected: self.cfg.q as usize,
                actual: y1.len(),
            });
        }
        let read = |user: User| -> Vec<bool> {
            let msg = user.message();
            self.roles(user)
                .iter()
                .enumerate()
                .filter(|(_, &r)| r == msg)
                .map(|(i, _)| y1.level(self.y1_level(user, i + 1)) == 1)
                .collect()
        };
        Ok((read(User::One), read(User::Two)))
    }

    pub fn level_map(&self) -> Vec<LevelMapEntry> {
        [User::One, User::Two]
            .into_iter()
            .flat_map(|user| {
                self.roles(user).iter().enumerate().map(move |(i, &role)| LevelMapEntry {
                    user: match user {
                        User::One => 1,
                        User::Two => 2,
                    },
                    level: i + 1,
                    role,
                    y1_level: self.y1_level(user, i + 1),
                    y2_level: self.y2_level(user, i + 1),
                })
            })
            .collect()
    }

    /// One line per user level: `user level role y1_level y2_level`, with `-`
    /// for levels the eavesdropper does not hear.
    pub fn level_map_text(&self) -> String {
        let mut s = format!(
            "# {} m1={} m2={} j1={} j2={}\n# user level role y1 y2\n",
            self.cfg, self.m1, self.m2, self.j1, self.j2
        );
        for e in self.level_map() {
            let y2 = e.y2_level.map_or_else(|| "-".to_string(), |l| l.to_string());
            s.push_str(&format!("{} {} {} {} {}\n", e.user, e.level, e.role, e.y1_level, y2));
        }
        s
    }

    pub fn level_map_json(&self) -> String {
        serde_json::to_string_pretty(&LevelMap {
            cfg: self.cfg,
            m1: self.m1,
            m2: self.m2,
            j1: self.j1,
            j2: self.j2,
            formula_rate: self.formula_rate(),
            levels: self.level_map(),
        })
        .expect("level map serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMapEntry {
    pub user: u8,
    pub level: usize,
    pub role: LevelRole,
    pub y1_level: usize,
    pub y2_level: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMap {
    pub cfg: ChannelConfig,
    pub m1: usize,
    pub m2: usize,
    pub j1: usize,
    pub j2: usize,
    pub formula_rate: u64,
    pub levels: Vec<LevelMapEntry>,
}
