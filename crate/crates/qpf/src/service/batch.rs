use std::collections::VecDeque;

use super::transform::Segment;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExecutionBatch {
    pub segments: Vec<Segment>,
}

impl ExecutionBatch {
    pub fn command_count(&self) -> usize {
        self.segments.iter().map(Segment::command_count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Takes whole segments from the front of the queue while they fit.
pub fn buffer_and_batch(queue: &mut VecDeque<Segment>, capacity: usize) -> ExecutionBatch {
    let mut batch = ExecutionBatch::default();
    let mut used = 0;
    while let Some(next) = queue.front() {
        if used + next.command_count() > capacity {
            break;
        }
        used += next.command_count();
        batch.segments.push(queue.pop_front().expect("front exists"));
    }
    batch
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpu_core::isa::Instruction;

    fn segment(ticket: u64, commands: usize) -> Segment {
        Segment {
            ticket,
            client: "c".into(),
            id: None,
            init_bits: vec![],
            body: vec![Instruction::Cqet { transistor: 0 }; commands],
            reported: vec![],
        }
    }

    #[test]
    fn fills_with_whole_segments() {
        let mut q: VecDeque<_> = (0..3).map(|t| segment(t, 30)).collect();
        assert_eq!(buffer_and_batch(&mut q, 100).segments.len(), 3);
        let mut q: VecDeque<_> = (0..2).map(|t| segment(t, 30)).collect();
        let b = buffer_and_batch(&mut q, 50);
        assert_eq!(b.segments.len(), 1);
        assert_eq!(q.len(), 1);
        assert!(buffer_and_batch(&mut VecDeque::new(), 50).is_empty());
    }
}
