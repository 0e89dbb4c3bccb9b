use super::{agent_names, build_scf, permutations, BuildError};
use crate::numeric::{int, Rational};
use crate::scf::Scf;

/// School choice: students report strict orders over all schools.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchoolChoiceSpec {
    pub students: usize,
    pub capacities: Vec<usize>,
    /// `priorities[s]` lists students, highest priority first.
    pub priorities: Vec<Vec<usize>>,
}

impl SchoolChoiceSpec {
    pub fn new(students: usize, capacities: Vec<usize>, priorities: Vec<Vec<usize>>) -> Self {
        Self {
            students,
            capacities,
            priorities,
        }
    }

    /// Three students, three unit-capacity schools; `a` and `b` rank A > B > C,
    /// `c` ranks B > C > A.
    pub fn default_instance() -> Self {
        Self::new(
            3,
            vec![1, 1, 1],
            vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 2, 0]],
        )
    }

    fn validate(&self) -> Result<(), BuildError> {
        if self.students == 0 || self.capacities.is_empty() {
            return Err(BuildError::Param("need students and schools".into()));
        }
        if self.priorities.len() != self.capacities.len() {
            return Err(BuildError::Param("one priority order per school".into()));
        }
        for p in &self.priorities {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..self.students).collect::<Vec<_>>() {
                return Err(BuildError::Param(
                    "priorities must order every student".into(),
                ));
            }
        }
        if self.capacities.len() > 4 || self.students > 4 {
            return Err(BuildError::Param(
                "school choice instances above 4x4 are not desk-scale".into(),
            ));
        }
        Ok(())
    }
}

/// Student-proposing deferred acceptance. `prefs[i]` lists acceptable schools
/// best first; returns each student's school, `None` if unmatched.
pub fn deferred_acceptance(
    prefs: &[Vec<usize>],
    capacities: &[usize],
    priorities: &[Vec<usize>],
) -> Vec<Option<usize>> {
    let n = prefs.len();
    let rank: Vec<Vec<usize>> = priorities
        .iter()
        .map(|p| {
            let mut r = vec![0; n];
            for (k, &i) in p.iter().enumerate() {
                r[i] = k;
            }
            r
        })
        .collect();
    let mut next = vec![0usize; n];
    let mut held: Vec<Vec<usize>> = vec![Vec::new(); capacities.len()];
    let mut free: Vec<usize> = (0..n).collect();
    while let Some(i) = free.pop() {
        let Some(&s) = prefs[i].get(next[i]) else {
            continue;
        };
        next[i] += 1;
        held[s].push(i);
        held[s].sort_by_key(|&j| rank[s][j]);
        if held[s].len() > capacities[s] {
            let rejected = held[s].pop().expect("over capacity");
            free.push(rejected);
        }
    }
    let mut out = vec![None; n];
    for (s, hs) in held.iter().enumerate() {
        for &i in hs {
            out[i] = Some(s);
        }
    }
    out
}

/// SPDA on the full strict-order domain (every school acceptable); rank utilities
/// (top school = number of schools, bottom = 1, unassigned = 0).
pub fn build_spda(spec: &SchoolChoiceSpec) -> Result<Scf, BuildError> {
    spec.validate()?;
    let k = spec.capacities.len();
    let agents = agent_names(spec.students)?;
    let schools: Vec<String> = (0..k)
        .map(|s| ((b'a' + s as u8) as char).to_string())
        .collect();
    let orders = permutations(k);
    let labels: Vec<String> = orders
        .iter()
        .map(|o| {
            o.iter()
                .map(|&s| schools[s].as_str())
                .collect::<Vec<_>>()
                .join(">")
        })
        .collect();
    let names = agents.clone();
    build_scf(
        agents,
        vec![labels; spec.students],
        |profile| {
            let prefs: Vec<Vec<usize>> = profile.iter().map(|&t| orders[t].clone()).collect();
            vec![(
                deferred_acceptance(&prefs, &spec.capacities, &spec.priorities),
                int(1),
            )]
        },
        |matching| {
            matching
                .iter()
                .enumerate()
                .map(|(i, s)| format!("{}:{}", names[i], s.map_or("-", |s| schools[s].as_str())))
                .collect::<Vec<_>>()
                .join(" ")
        },
        |i, t, matching| match matching[i] {
            Some(s) => {
                let rank = orders[t]
                    .iter()
                    .position(|&x| x == s)
                    .expect("school ranked");
                Rational::from_integer(((k - rank) as i64).into())
            }
            None => int(0),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn priorities_break_conflicts() {
        let m = deferred_acceptance(
            &[vec![0, 1], vec![0, 1]],
            &[1, 1],
            &[vec![1, 0], vec![0, 1]],
        );
        assert_eq!(m, vec![Some(1), Some(0)]);
    }
}
