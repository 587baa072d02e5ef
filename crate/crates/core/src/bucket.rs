//! Paged bucket priority queue keyed by nonnegative integer time.
//!
//! A page of `page` consecutive buckets is live at any moment; events
//! scheduled past the page wait on an overflow list and are distributed
//! when the page is exhausted. A push earlier than the scan position
//! (possible after a peek ran ahead) rewinds the page.

#[derive(Debug, Clone)]
pub struct BucketPQ<T> {
    page: usize,
    base: i64,
    cursor: usize,
    buckets: Vec<Vec<T>>,
    overflow: Vec<(i64, T)>,
    len: usize,
    pages_used: u64,
    pushes: u64,
}

impl<T> BucketPQ<T> {
    /// Queue whose page covers `page` time units (at least 1).
    pub fn new(page: usize) -> Self {
        let page = page.max(1);
        BucketPQ {
            page,
            base: 0,
            cursor: 0,
            buckets: (0..page).map(|_| Vec::new()).collect(),
            overflow: Vec::new(),
            len: 0,
            pages_used: 1,
            pushes: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of pages opened so far, the first one included.
    pub fn pages_used(&self) -> u64 {
        self.pages_used
    }

    pub fn pushes(&self) -> u64 {
        self.pushes
    }

    /// Schedules `item` at time `t`.
    pub fn push(&mut self, t: i64, item: T) {
        self.pushes += 1;
        self.len += 1;
        if t < self.base {
            self.rewind(t);
        } else if t < self.base + self.cursor as i64 {
            self.cursor = (t - self.base) as usize;
        }
        if t < self.base + self.page as i64 {
            self.buckets[(t - self.base) as usize].push(item);
        } else {
            self.overflow.push((t, item));
        }
    }

    /// Time of the earliest pending event.
    pub fn peek_time(&mut self) -> Option<i64> {
        if self.len == 0 {
            return None;
        }
        loop {
            while self.cursor < self.page {
                if !self.buckets[self.cursor].is_empty() {
                    return Some(self.base + self.cursor as i64);
                }
                self.cursor += 1;
            }
            self.next_page();
        }
    }

    /// Removes one event scheduled at a time `<= t`, if any.
    pub fn pop_until(&mut self, t: i64) -> Option<T> {
        match self.peek_time() {
            Some(at) if at <= t => {
                self.len -= 1;
                self.buckets[self.cursor].pop()
            }
            _ => None,
        }
    }

    fn rewind(&mut self, t: i64) {
        for (i, b) in self.buckets.iter_mut().enumerate() {
            let at = self.base + i as i64;
            self.overflow.extend(b.drain(..).map(|x| (at, x)));
        }
        self.base = t;
        self.cursor = 0;
        self.pages_used += 1;
        self.distribute();
    }

    fn distribute(&mut self) {
        let end = self.base + self.page as i64;
        let pending = std::mem::take(&mut self.overflow);
        for (t, item) in pending {
            if t < end {
                self.buckets[(t - self.base) as usize].push(item);
            } else {
                self.overflow.push((t, item));
            }
        }
    }

    fn next_page(&mut self) {
        let Some(min) = self.overflow.iter().map(|(t, _)| *t).min() else {
            self.base += self.page as i64;
            self.cursor = 0;
            return;
        };
        self.base = min;
        self.cursor = 0;
        self.pages_used += 1;
        self.distribute();
    }
}
